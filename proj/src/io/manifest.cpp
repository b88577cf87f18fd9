#include "activech/io/manifest.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#include "json.hpp"

#include "activech/io/writers.hpp"

namespace activech::io {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()) % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[80];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms.count()));
  return out;
}

struct Manifest::Impl {
  std::string path;
  nlohmann::ordered_json doc;

  void write() const { write_file_atomic(path, doc.dump(2) + "\n"); }
};

Manifest::Manifest(std::string path, std::string command, const RunConfig& cfg)
    : impl_(std::make_unique<Impl>()) {
  impl_->path = std::move(path);
  auto& d = impl_->doc;
  d["tool"] = "activech";
  d["version"] = ACTIVECH_VERSION;
  d["command"] = std::move(command);
  d["seed"] = cfg.seed;
  d["config"] = resolved_fields(cfg);
  d["config_given"] = cfg.raw;
  d["start_time"] = utc_timestamp();
  d["status"] = "running";
  d["newton_iterations"] = nlohmann::json::array();
  d["checks"] = nlohmann::json::array();
  d["warnings"] = nlohmann::json::array();
  d["results"] = nlohmann::json::object();
  impl_->write();
}

Manifest::~Manifest() = default;

void Manifest::set_newton_iterations(const std::vector<int>& per_step) {
  impl_->doc["newton_iterations"] = per_step;
}

void Manifest::add_check(const std::string& name, bool passed, const std::string& detail) {
  impl_->doc["checks"].push_back({{"name", name}, {"passed", passed}, {"detail", detail}});
}

void Manifest::add_warning(const std::string& text) { impl_->doc["warnings"].push_back(text); }

void Manifest::set_result(const std::string& key, double value) {
  // JSON has no NaN; record non-finite values as text.
  if (std::isfinite(value)) impl_->doc["results"][key] = value;
  else impl_->doc["results"][key] = format_double(value);
}

void Manifest::set_result(const std::string& key, const std::string& value) {
  impl_->doc["results"][key] = value;
}

void Manifest::finish(bool ok, const std::string& error) {
  auto& d = impl_->doc;
  d["end_time"] = utc_timestamp();
  d["status"] = ok ? "ok" : "failed";
  if (!ok) d["error"] = error;
  impl_->write();
}

std::string Manifest::dump() const { return impl_->doc.dump(2); }

}  // namespace activech::io
