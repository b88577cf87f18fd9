#include "activech/analysis/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

#include "activech/error.hpp"
#include "activech/fem/simulation.hpp"
#include "activech/model/sharp_params.hpp"
#include "activech/sharp/planar.hpp"

namespace activech::analysis {

std::optional<double> ladder_mesh_size(double epsilon) {
  if (!(epsilon > 0.0)) return std::nullopt;
  const double k = std::log2(1.0 / (epsilon * std::numbers::pi));
  const double kr = std::round(k);
  if (kr < 0.0 || std::abs(k - kr) > 1e-9) return std::nullopt;
  return std::ldexp(1.0, -(3 + static_cast<int>(kr)));
}

void ConvergenceSetup::validate() const {
  params.validate();
  if (dim != 1 && dim != 2) throw ConfigError("convergence study: dim must be 1 or 2");
  if (epsilons.empty()) throw ConfigError("convergence study: empty epsilon list");
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    if (!(epsilons[k] > 0.0)) throw ConfigError("convergence study: epsilon must be positive");
    if (k > 0 && !(epsilons[k] < epsilons[k - 1]))
      throw ConfigError("convergence study: epsilon list must be strictly decreasing");
  }
  if (!(q0 > 0.0 && q0 < length_L)) throw ConfigError("convergence study: q0 must lie in (0, L)");
  if (!h)
    for (double e : epsilons)
      if (!ladder_mesh_size(e))
        throw ConfigError("convergence study: epsilon not of the form 1/(2^k pi); give h");
}

std::optional<double> eoc(double e_prev, double e, double eps_prev, double eps) {
  if (!(e_prev > 0.0 && e > 0.0 && eps_prev > 0.0 && eps > 0.0)) return std::nullopt;
  if (eps_prev == eps) return std::nullopt;
  return std::log(e_prev / e) / std::log(eps_prev / eps);
}

namespace {

ConvergenceRow run_row(const ConvergenceSetup& s, double epsilon, double q_ref) {
  ConvergenceRow row;
  row.epsilon = epsilon;
  row.h = s.h ? *s.h : *ladder_mesh_size(epsilon);
  try {
    auto p = s.params;
    p.epsilon = epsilon;
    fem::MeshSpec mesh{s.dim, {s.length_L, s.width_Lt}, row.h, s.corners};
    fem::FlatFront init;
    init.q0 = s.q0;
    fem::SolverConfig cfg;
    cfg.tau = s.tau;
    fem::DiagnosticsSpec diag;
    diag.stride = std::numeric_limits<int>::max();
    diag.track_front = true;
    const auto rec = fem::run_simulation(p, mesh, init, cfg, s.t_end, diag);
    if (rec.front_multiplicity) throw NumericalError("interface crossing is not unique");
    const auto& last = rec.diagnostics.back();
    if (!last.q_h) throw NumericalError("front lost before the final time");
    row.q_h = *last.q_h;
    row.error = std::abs(q_ref - *row.q_h);
    row.newton_iterations = rec.newton_iterations;
  } catch (const Error& e) {
    row.failure = e.what();
  }
  return row;
}

}  // namespace

ConvergenceTable convergence_study(const ConvergenceSetup& setup) {
  setup.validate();
  ConvergenceTable table;

  sharp::PlanarConfig pc;
  pc.sharp = model::derive_sharp_params(setup.params, setup.length_L, setup.width_Lt);
  pc.q0 = setup.q0;
  pc.dt = setup.reference_dt;
  pc.t_end = setup.t_end;
  pc.output_stride = std::numeric_limits<int>::max();
  const auto traj = sharp::integrate_q(pc);
  if (traj.boundary_hit) throw NumericalError("reference front leaves the domain before T");
  table.q_reference = traj.final_q();

  const auto n = setup.epsilons.size();
  table.rows.resize(n);
  const unsigned threads = std::max(1u, setup.threads);
  // Rows are independent; results do not depend on the number of threads.
  for (std::size_t start = 0; start < n; start += threads) {
    std::vector<std::future<ConvergenceRow>> jobs;
    for (std::size_t k = start; k < std::min(n, start + threads); ++k)
      jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, run_row,
                                std::cref(setup), setup.epsilons[k], table.q_reference));
    for (std::size_t k = 0; k < jobs.size(); ++k) table.rows[start + k] = jobs[k].get();
  }
  for (std::size_t k = 1; k < n; ++k) {
    const auto& a = table.rows[k - 1];
    auto& b = table.rows[k];
    if (a.error && b.error) b.eoc = eoc(*a.error, *b.error, a.epsilon, b.epsilon);
  }
  return table;
}

}  // namespace activech::analysis
