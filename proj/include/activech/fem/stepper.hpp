#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "activech/fem/field.hpp"
#include "activech/fem/linear_solver.hpp"
#include "activech/model/reaction.hpp"

namespace activech::fem {

using model::PhaseFieldParams;

struct SolverConfig {
  double tau = 1e-3;
  /// Newton stops once max_i tau |R1_i| / w_i and max_i |R2_i| / w_i are both
  /// below this, R1/R2 being the integrated residuals of the phi/mu
  /// equations and w_i the lumped weights (so both parts are nodal values
  /// in the units of phi and mu).
  double newton_tol = 1e-9;
  int newton_max = 20;
  double linear_tol = 1e-10;  ///< relative residual of each Newton linear solve
  std::uint64_t seed = 0;
  LinearSolverKind linear_solver = LinearSolverKind::automatic;

  void validate() const;
};

struct StepReport {
  long step = 0;  ///< index of the step just completed
  int newton_iterations = 0;
  std::vector<double> residuals;  ///< residual norm before each Newton update, then the final one
  double linear_residual = 0.0;   ///< worst relative residual of the linear solves
  int krylov_iterations = 0;      ///< summed over the Newton iterations
  /// |(phi^{n+1} - phi^n, 1)^h - tau (S_eps(phi^n), 1)^h|
  double mass_defect = 0.0;
};

/// Mass-lumped P1 scheme with the mobility and the source lagged at phi^n
/// and the potential term implicit (Newton).
class TimeStepper {
 public:
  TimeStepper(std::shared_ptr<const StructuredMesh> mesh, const PhaseFieldParams& params,
              const SolverConfig& cfg);
  ~TimeStepper();
  TimeStepper(TimeStepper&&) noexcept;
  TimeStepper& operator=(TimeStepper&&) noexcept;

  /// Advance state by one step in place. Throws NumericalError (with the
  /// residual history) when Newton fails; the state is left untouched then.
  StepReport advance(SimState& state);

  /// mu solving the second equation for given phi (used at t = 0).
  Eigen::VectorXd chemical_potential(const Eigen::VectorXd& phi) const;
  SimState initial_state(NodalField phi) const;

  const SparseMatrix& stiffness() const;
  const SolverConfig& config() const;
  const PhaseFieldParams& params() const;
  std::string linear_solver_name() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One step with a freshly assembled stepper.
SimState time_step(const SimState& state, const PhaseFieldParams& params, const SolverConfig& cfg);

}  // namespace activech::fem
