// Command-line front end; talks to the solver through the C API only.

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "activech/activech.h"

namespace {

/// Named flags and the config field each one sets, per command. Flags such
/// as --q0 land in the section the command reads.
struct FlagTarget {
  const char* flag;
  const char* help;
  std::map<std::string, std::string> per_command;  ///< command -> field; "*" for all
};

const std::vector<FlagTarget>& flag_targets() {
  static const std::vector<FlagTarget> targets{
      {"--beta", "surface tension coefficient", {{"*", "physics.beta"}}},
      {"--epsilon", "interface width (expressions such as 1/(16*pi) allowed)",
       {{"*", "discretization.epsilon"}}},
      {"--splus", "source S+ in the +1 phase", {{"*", "physics.s_plus"}}},
      {"--sminus", "source S- in the -1 phase", {{"*", "physics.s_minus"}}},
      {"--rho-plus", "rho+", {{"*", "physics.rho_plus"}}},
      {"--rho-minus", "rho-", {{"*", "physics.rho_minus"}}},
      {"--k-plus", "K+ (instead of rho+)", {{"*", "physics.k_plus"}}},
      {"--k-minus", "K- (instead of rho-)", {{"*", "physics.k_minus"}}},
      {"--lcoef", "interfacial production L", {{"*", "physics.l_coef"}}},
      {"--L", "domain length L1", {{"*", "domain.L1"}}},
      {"--Lt", "transverse length L2", {{"*", "domain.L2"}}},
      {"--tau", "time step", {{"*", "discretization.tau"}}},
      {"--T", "final time", {{"*", "discretization.T"}}},
      {"--h", "mesh size (or auto)", {{"*", "discretization.h"}}},
      {"--seed", "seed of the random initial data", {{"*", "initial.seed"}}},
      {"--lmax", "largest mode index",
       {{"stability", "stability.lmax"}, {"modes", "modes.lmax"}, {"*", "output.mode_lmax"}}},
      {"--dim", "spatial dimension",
       {{"converge", "converge.dim"}, {"stability", "stability.dim"}, {"*", "domain.dim"}}},
      {"--q0", "initial (or frozen) front position",
       {{"converge", "converge.q0"},
        {"stability", "stability.q"},
        {"sharp-ode", "sharp_ode.q0"},
        {"*", "initial.q0"}}},
  };
  return targets;
}

std::string target_field(const FlagTarget& t, const std::string& command) {
  const auto it = t.per_command.find(command);
  return it != t.per_command.end() ? it->second : t.per_command.at("*");
}

struct Invocation {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> sets;
  std::map<std::string, std::string> flags;  ///< flag -> value
};

void print_line(const char* line, void*) { std::printf("%s\n", line); }

int report(ach_status st) {
  std::fprintf(stderr, "activech: error: %s\n", ach_last_error());
  return st == ACH_ERR_NUMERICAL ? 2 : 1;
}

int run(const std::string& command, const Invocation& inv) {
  ach_config* cfg = nullptr;
  ach_status st = inv.config_path.empty() ? ach_config_parse("", &cfg)
                                          : ach_config_load(inv.config_path.c_str(), &cfg);
  if (st != ACH_OK) return report(st);

  std::vector<std::pair<std::string, std::string>> overrides;
  for (const auto& s : inv.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "activech: error: --set expects section.key=value, got '%s'\n", s.c_str());
      ach_config_free(cfg);
      return 1;
    }
    overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  for (const auto& t : flag_targets()) {
    const auto it = inv.flags.find(t.flag);
    if (it != inv.flags.end()) overrides.emplace_back(target_field(t, command), it->second);
  }
  if (!inv.out_dir.empty()) overrides.emplace_back("output.dir", inv.out_dir);
  for (const auto& [key, value] : overrides) {
    st = ach_config_set(cfg, key.c_str(), value.c_str());
    if (st != ACH_OK) {
      ach_config_free(cfg);
      return report(st);
    }
  }

  int verdict = 0;
  st = ach_run_command(command.c_str(), cfg, print_line, nullptr, &verdict);
  ach_config_free(cfg);
  std::fflush(stdout);
  if (st != ACH_OK) return report(st);
  return verdict == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active Cahn-Hilliard solver and sharp-interface tools"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", std::string(ach_version()));
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::map<std::string, Invocation> invocations;
  std::map<std::string, std::map<std::string, std::optional<std::string>>> flag_values;
  const std::map<std::string, std::string> descriptions{
      {"simulate", "run the phase-field scheme"},
      {"sharp-ode", "integrate the planar front ODE"},
      {"stability", "tabulate amplification factors over transverse modes"},
      {"converge", "epsilon convergence study against the sharp-interface front"},
      {"modes", "simulate a perturbed front and fit mode growth rates"},
      {"si-table", "tabulate the interfacial source S_I"},
      {"check", "run the invariant suite"},
  };
  for (size_t i = 0; i < ach_command_count(); ++i) {
    const std::string name = ach_command_name(i);
    auto* sub = app.add_subcommand(name, descriptions.at(name));
    auto& inv = invocations[name];
    sub->add_option("--config", inv.config_path, "configuration document")->check(CLI::ExistingFile);
    sub->add_option("--out", inv.out_dir, "output directory (output.dir)");
    sub->add_option("--set", inv.sets, "override section.key=value (repeatable)");
    for (const auto& t : flag_targets()) sub->add_option(t.flag, flag_values[name][t.flag], t.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  for (auto* sub : app.get_subcommands()) {
    const std::string name = sub->get_name();
    auto& inv = invocations[name];
    for (const auto& [flag, value] : flag_values[name])
      if (value) inv.flags[flag] = *value;
    return run(name, inv);
  }
  return 1;
}
