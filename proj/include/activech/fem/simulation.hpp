#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "activech/fem/initial_data.hpp"
#include "activech/fem/stepper.hpp"

namespace activech::fem {

struct MeshSpec {
  int dim = 2;
  std::array<double, 2> lengths{1.0, 1.0};
  double h = 1.0 / 32.0;
  CornerLumping corners = CornerLumping::tensor;
};

struct DiagnosticsSpec {
  int stride = 1;            ///< steps between diagnostic rows (t = 0 and T always included)
  bool track_front = false;  ///< record q_h along x2 = track_line
  double track_line = 0.0;
  int mode_lmax = -1;        ///< record A_0..A_lmax when >= 0 (2D only)
};

struct DiagnosticRow {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  std::optional<double> q_h;
  std::vector<double> modes;  ///< NaN where the measurement failed
};

struct RunRecord {
  std::vector<DiagnosticRow> diagnostics;
  std::vector<int> newton_iterations;  ///< per step
  std::vector<std::string> warnings;
  double max_abs_phi = 0.0;
  double max_mass_defect = 0.0;
  bool front_multiplicity = false;
  std::string linear_solver;
  SimState final_state;
};

/// Called with the initial state (report == nullptr) and after every step.
using StateObserver = std::function<void(const SimState&, const StepReport*)>;

/// Warning text when h exceeds eps sqrt(2) / 4, empty otherwise.
std::string resolution_warning(double h, double epsilon);

/// Runs the scheme from t = 0 to T (a multiple of tau within 1e-9).
/// Step failures propagate as NumericalError naming the step.
RunRecord run_simulation(const PhaseFieldParams& params, const MeshSpec& mesh_spec,
                         const InitSpec& init, const SolverConfig& cfg, double t_end,
                         const DiagnosticsSpec& diag, const StateObserver& observer = {});

/// Same, starting from a given state (e.g. a checkpoint); t_end is absolute.
RunRecord continue_simulation(const PhaseFieldParams& params, SimState state,
                              const SolverConfig& cfg, double t_end, const DiagnosticsSpec& diag,
                              const StateObserver& observer = {});

}  // namespace activech::fem
