#include "activech/fem/simulation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "activech/analysis/modes.hpp"
#include "activech/analysis/tracking.hpp"
#include "activech/fem/energy.hpp"

namespace activech::fem {

std::string resolution_warning(double h, double epsilon) {
  const double limit = epsilon * std::numbers::sqrt2 / 4.0;
  if (h <= limit * (1.0 + 1e-12)) return {};
  std::ostringstream os;
  os << "mesh size h = " << h << " exceeds eps sqrt(2)/4 = " << limit
     << "; fewer than ~9 nodes across the interface";
  return os.str();
}

namespace {

long step_count(double t_span, double tau) {
  const double n = std::round(t_span / tau);
  if (n < 0.0 || std::abs(n * tau - t_span) > 1e-9 * std::max(1.0, std::abs(t_span)))
    throw ConfigError("final time is not a multiple of tau");
  return static_cast<long>(n);
}

}  // namespace

RunRecord continue_simulation(const PhaseFieldParams& params, SimState state,
                              const SolverConfig& cfg, double t_end, const DiagnosticsSpec& diag,
                              const StateObserver& observer) {
  if (diag.stride < 1) throw ConfigError("diagnostic stride must be at least 1");
  const auto mesh = state.phi.mesh_ptr();
  if (diag.mode_lmax >= 0 && mesh->dim() != 2)
    throw ConfigError("mode amplitudes need a 2D mesh");
  TimeStepper stepper(mesh, params, cfg);
  const long first = state.step;
  const long last = step_count(t_end, cfg.tau);
  if (last < first) throw ConfigError("final time lies before the current state");

  RunRecord rec;
  rec.linear_solver = stepper.linear_solver_name();
  if (auto w = resolution_warning(std::max(mesh->spacing(0), mesh->dim() == 2 ? mesh->spacing(1) : 0.0),
                                  params.epsilon);
      !w.empty())
    rec.warnings.push_back(std::move(w));

  std::optional<analysis::InterfaceTracker> tracker;
  if (diag.track_front) tracker.emplace(diag.track_line);
  bool track_warned = false, mode_warned = false, bound_warned = false;

  auto record = [&](const SimState& s) {
    DiagnosticRow row;
    row.t = s.t;
    row.mass = total_mass(s.phi);
    row.energy = free_energy(s.phi, params);
    if (tracker) {
      try {
        row.q_h = tracker->update(s.phi).q;
      } catch (const NumericalError& e) {
        if (!track_warned) rec.warnings.push_back("t = " + std::to_string(s.t) + ": " + e.what());
        track_warned = true;
      }
    }
    if (diag.mode_lmax >= 0) {
      try {
        row.modes = analysis::mode_amplitudes(s.phi, diag.mode_lmax);
      } catch (const NumericalError& e) {
        row.modes.assign(static_cast<std::size_t>(diag.mode_lmax) + 1,
                         std::numeric_limits<double>::quiet_NaN());
        if (!mode_warned) rec.warnings.push_back("t = " + std::to_string(s.t) + ": " + e.what());
        mode_warned = true;
      }
    }
    rec.diagnostics.push_back(std::move(row));
  };
  auto check_bound = [&](const SimState& s) {
    const double m = s.phi.values().cwiseAbs().maxCoeff();
    rec.max_abs_phi = std::max(rec.max_abs_phi, m);
    if (m > 1.1 && !bound_warned) {
      std::ostringstream os;
      os << "max |phi| = " << m << " exceeds 1.1 at t = " << s.t;
      rec.warnings.push_back(os.str());
      bound_warned = true;
    }
  };

  check_bound(state);
  record(state);
  if (observer) observer(state, nullptr);
  for (long n = first + 1; n <= last; ++n) {
    const auto rep = stepper.advance(state);
    rec.newton_iterations.push_back(rep.newton_iterations);
    rec.max_mass_defect = std::max(rec.max_mass_defect, rep.mass_defect);
    check_bound(state);
    if ((n - first) % diag.stride == 0 || n == last) record(state);
    if (observer) observer(state, &rep);
  }
  rec.front_multiplicity = tracker && tracker->multiplicity_seen();
  if (rec.front_multiplicity)
    rec.warnings.push_back("several interface crossings seen on the tracking line");
  rec.final_state = std::move(state);
  return rec;
}

RunRecord run_simulation(const PhaseFieldParams& params, const MeshSpec& mesh_spec,
                         const InitSpec& init, const SolverConfig& cfg, double t_end,
                         const DiagnosticsSpec& diag, const StateObserver& observer) {
  params.validate();
  cfg.validate();
  auto mesh = std::make_shared<const StructuredMesh>(
      StructuredMesh::build(mesh_spec.dim, mesh_spec.lengths, mesh_spec.h, mesh_spec.corners));
  step_count(t_end, cfg.tau);
  auto phi0 = init_field(mesh, init, params.epsilon);
  TimeStepper probe(mesh, params, cfg);
  SimState s0 = probe.initial_state(std::move(phi0));
  return continue_simulation(params, std::move(s0), cfg, t_end, diag, observer);
}

}  // namespace activech::fem
