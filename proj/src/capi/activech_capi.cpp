#include "activech/activech.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "activech/error.hpp"
#include "activech/fem/initial_data.hpp"
#include "activech/fem/stepper.hpp"
#include "activech/io/commands.hpp"
#include "activech/io/config.hpp"
#include "activech/io/writers.hpp"

using namespace activech;

struct ach_config {
  std::string text;
  io::Overrides overrides;
  io::RunConfig parsed;
};

struct ach_simulation {
  std::unique_ptr<fem::TimeStepper> stepper;
  fem::SimState state;
};

namespace {

thread_local std::string last_error;

ach_status fail(ach_status code, const std::string& message) {
  last_error = message;
  return code;
}

/// Maps the exception in flight to a status code.
ach_status translate() {
  try {
    throw;
  } catch (const ConfigError& e) {
    return fail(ACH_ERR_CONFIG, e.what());
  } catch (const NumericalError& e) {
    return fail(ACH_ERR_NUMERICAL, e.what());
  } catch (const IoError& e) {
    return fail(ACH_ERR_IO, e.what());
  } catch (const DomainError& e) {
    return fail(ACH_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ACH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ACH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ACH_ERR_INTERNAL, "unknown exception");
  }
}

template <class F>
ach_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return ACH_OK;
  } catch (...) {
    return translate();
  }
}

ach_status null_argument(const char* what) {
  return fail(ACH_ERR_INVALID_ARGUMENT, std::string(what) + " is null");
}

ach_status make_config(std::string text, ach_config** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto cfg = std::make_unique<ach_config>();
    cfg->parsed = io::parse_config(text);
    cfg->text = std::move(text);
    *out = cfg.release();
  });
}

}  // namespace

extern "C" {

const char* ach_version(void) { return ACTIVECH_VERSION; }

const char* ach_last_error(void) { return last_error.c_str(); }

ach_status ach_config_parse(const char* text, ach_config** out) {
  if (!text) return null_argument("text");
  return make_config(text, out);
}

ach_status ach_config_load(const char* path, ach_config** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  std::string text;
  const ach_status read = guarded([&] { text = io::read_file(path); });
  if (read != ACH_OK) return read;
  return make_config(std::move(text), out);
}

ach_status ach_config_set(ach_config* cfg, const char* key, const char* value) {
  if (!cfg) return null_argument("config");
  if (!key) return null_argument("key");
  if (!value) return null_argument("value");
  return guarded([&] {
    auto overrides = cfg->overrides;
    overrides.emplace_back(key, value);
    cfg->parsed = io::parse_config(cfg->text, overrides);
    cfg->overrides = std::move(overrides);
  });
}

ach_status ach_config_get(const ach_config* cfg, const char* key, char* buf, size_t size) {
  if (!cfg) return null_argument("config");
  if (!key) return null_argument("key");
  if (!buf) return null_argument("buf");
  std::string value;
  const ach_status st = guarded([&] {
    const std::string name = key;
    const auto dot = name.find('.');
    if (dot == std::string::npos) throw ConfigError("key '" + name + "' is not of the form section.key");
    const auto fields = io::resolved_fields(cfg->parsed);
    const auto sec = fields.find(name.substr(0, dot));
    if (sec == fields.end()) throw ConfigError("unknown section in '" + name + "'");
    const auto it = sec->second.find(name.substr(dot + 1));
    if (it == sec->second.end()) throw ConfigError("unknown key '" + name + "'");
    value = it->second;
  });
  if (st != ACH_OK) return st;
  if (value.size() + 1 > size)
    return fail(ACH_ERR_INVALID_ARGUMENT, "buffer too small for the value of " + std::string(key));
  std::memcpy(buf, value.c_str(), value.size() + 1);
  return ACH_OK;
}

void ach_config_free(ach_config* cfg) { delete cfg; }

size_t ach_command_count(void) { return io::command_names().size(); }

const char* ach_command_name(size_t index) {
  const auto& names = io::command_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

ach_status ach_run_command(const char* command, const ach_config* cfg, ach_emit_fn emit, void* user,
                           int* verdict) {
  if (!command) return null_argument("command");
  if (!cfg) return null_argument("config");
  if (!verdict) return null_argument("verdict");
  *verdict = 1;
  return guarded([&] {
    const io::Emit sink = [&](const std::string& line) {
      if (emit) emit(line.c_str(), user);
    };
    *verdict = io::run_command(command, cfg->parsed, sink);
  });
}

ach_status ach_simulation_create(const ach_config* cfg, ach_simulation** out) {
  if (!cfg) return null_argument("config");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const auto& c = cfg->parsed;
    const auto params = io::phase_field_params(c);
    auto mesh = std::make_shared<const fem::StructuredMesh>(fem::StructuredMesh::build(
        c.domain.dim, c.domain.lengths, io::resolved_mesh_size(c), c.disc.corners));
    fem::SolverConfig solver = c.solver;
    solver.tau = c.disc.tau;
    solver.seed = c.seed;
    auto sim = std::make_unique<ach_simulation>();
    sim->stepper = std::make_unique<fem::TimeStepper>(mesh, params, solver);
    sim->state = sim->stepper->initial_state(fem::init_field(mesh, c.init, params.epsilon));
    *out = sim.release();
  });
}

ach_status ach_simulation_advance(ach_simulation* sim, long steps) {
  if (!sim) return null_argument("simulation");
  if (steps < 0) return fail(ACH_ERR_INVALID_ARGUMENT, "negative step count");
  return guarded([&] {
    for (long i = 0; i < steps; ++i) sim->stepper->advance(sim->state);
  });
}

ach_status ach_simulation_time(const ach_simulation* sim, double* t) {
  if (!sim) return null_argument("simulation");
  if (!t) return null_argument("t");
  *t = sim->state.t;
  return ACH_OK;
}

ach_status ach_simulation_node_count(const ach_simulation* sim, size_t* n) {
  if (!sim) return null_argument("simulation");
  if (!n) return null_argument("n");
  *n = sim->state.phi.size();
  return ACH_OK;
}

ach_status ach_simulation_copy_phi(const ach_simulation* sim, double* buf, size_t size) {
  if (!sim) return null_argument("simulation");
  if (!buf) return null_argument("buf");
  const auto& v = sim->state.phi.values();
  if (size < static_cast<size_t>(v.size()))
    return fail(ACH_ERR_INVALID_ARGUMENT, "buffer smaller than the node count");
  std::memcpy(buf, v.data(), sizeof(double) * static_cast<size_t>(v.size()));
  return ACH_OK;
}

ach_status ach_simulation_mass(const ach_simulation* sim, double* mass) {
  if (!sim) return null_argument("simulation");
  if (!mass) return null_argument("mass");
  *mass = fem::lumped_integral(sim->state.phi.mesh(), sim->state.phi.values());
  return ACH_OK;
}

void ach_simulation_free(ach_simulation* sim) { delete sim; }

}  // extern "C"
