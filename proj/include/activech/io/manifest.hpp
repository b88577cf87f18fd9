#pragma once

#include <memory>
#include <string>
#include <vector>

#include "activech/io/config.hpp"

namespace activech::io {

/// JSON record of one command invocation. The constructor writes it at
/// once (no end time), so a crashed run still leaves the resolved config
/// and seed behind; finish() rewrites it with the outcome.
class Manifest {
 public:
  Manifest(std::string path, std::string command, const RunConfig& cfg);
  ~Manifest();
  Manifest(const Manifest&) = delete;
  Manifest& operator=(const Manifest&) = delete;

  void set_newton_iterations(const std::vector<int>& per_step);
  void add_check(const std::string& name, bool passed, const std::string& detail);
  void add_warning(const std::string& text);
  void set_result(const std::string& key, double value);
  void set_result(const std::string& key, const std::string& value);

  /// Records end time and status ("ok" or "failed" with the message).
  void finish(bool ok, const std::string& error = {});
  /// Current document (pretty-printed JSON).
  std::string dump() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// UTC wall time as ISO 8601 with milliseconds.
std::string utc_timestamp();

}  // namespace activech::io
