#pragma once

#include <functional>
#include <string>
#include <vector>

#include "activech/io/config.hpp"

namespace activech::io {

/// Receives one line of human-readable output (no trailing newline).
using Emit = std::function<void(const std::string&)>;

/// simulate, sharp-ode, stability, converge, modes, si-table, check.
const std::vector<std::string>& command_names();

/// Runs a subcommand: writes `manifest.json` into cfg.output.dir before
/// any compute, then the command's data files. Returns 0 on success and 2
/// when the command ran but its numerical verdict failed (a failed
/// invariant or convergence row). Throws ConfigError, IoError and
/// NumericalError otherwise; the manifest then records the failure.
int run_command(const std::string& name, const RunConfig& cfg, const Emit& emit);

/// Thread cap from ACTIVE_CH_THREADS (absent or invalid: no cap).
unsigned thread_cap(unsigned requested);

}  // namespace activech::io
