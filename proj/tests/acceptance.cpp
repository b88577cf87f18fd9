// Acceptance criteria, one PASS/FAIL line each.
//
//   acceptance            criteria 1-8 and 10
//   acceptance 9 11       the listed ones (ids: 1..11, ladder2d)
//   acceptance all        everything, slow runs included

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "activech/analysis/convergence.hpp"
#include "activech/analysis/modes.hpp"
#include "activech/analysis/tracking.hpp"
#include "activech/error.hpp"
#include "activech/fem/simulation.hpp"
#include "activech/fem/stepper.hpp"
#include "activech/io/invariants.hpp"
#include "activech/model/sharp_params.hpp"
#include "activech/sharp/stability.hpp"

using namespace activech;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

Outcome from_check(const io::CheckResult& c) { return {c.passed, c.detail}; }

model::PhaseFieldParams params_rho(double beta, double eps, double s_plus, double s_minus,
                                   double rho_plus = 1.0, double rho_minus = 1.0, double l_coef = 0.0) {
  model::PhaseFieldParams p;
  p.beta = beta;
  p.epsilon = eps;
  p.reaction = model::reaction_from_rho(beta, p.potential, s_plus, s_minus, rho_plus, rho_minus, l_coef);
  return p;
}

/// Table 1 problem: moving planar front with q0 = 0.3 on (0, 1).
analysis::ConvergenceSetup table1_setup(int dim, std::vector<double> epsilons) {
  analysis::ConvergenceSetup s;
  s.params = params_rho(0.1, 1.0, -1.0, 4.0, 1.0, 0.1, -1.0);
  s.dim = dim;
  s.q0 = 0.3;
  s.t_end = 1.0;
  s.tau = 1e-3;
  s.epsilons = std::move(epsilons);
  return s;
}

Outcome ladder(int dim, const std::vector<double>& epsilons, const std::vector<double>& published) {
  const auto table = analysis::convergence_study(table1_setup(dim, epsilons));
  Outcome o{true, {}};
  std::ostringstream d;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    if (r.failure || !r.error) {
      o.passed = false;
      d << "eps=1/(" << std::lround(1 / (r.epsilon * pi)) << "pi) failed: " << r.failure.value_or("?") << "; ";
      continue;
    }
    const double ratio = *r.error / published[i];
    const bool within = ratio >= 0.5 && ratio <= 2.0;
    const bool eoc_ok = !r.eoc || (*r.eoc >= 1.5 && *r.eoc <= 2.3);
    o.passed = o.passed && within && eoc_ok;
    d << "e=" << sci(*r.error) << " (published " << sci(published[i]) << ")";
    if (r.eoc) d << " EOC=" << std::to_string(*r.eoc).substr(0, 4);
    d << "; ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion7() {
  return ladder(1, {1 / (4 * pi), 1 / (8 * pi), 1 / (16 * pi)}, {7.2539e-2, 1.9990e-2, 6.0682e-3});
}

Outcome ladder2d() {
  return ladder(2, {1 / (4 * pi), 1 / (8 * pi), 1 / (16 * pi), 1 / (32 * pi)},
                {7.2539e-2, 1.9990e-2, 6.0682e-3, 1.4667e-3});
}

Outcome criterion8() {
  const double eps = 1 / (16 * pi);
  const auto p = params_rho(0.1, eps, -1.0, 1.0);
  fem::FlatFront ff;
  ff.q0 = 0.5;
  fem::SolverConfig cfg;
  fem::DiagnosticsSpec diag;
  diag.stride = 1;
  diag.track_front = true;
  diag.track_line = 0.5;
  const auto h = analysis::ladder_mesh_size(eps).value();
  const auto rec = fem::run_simulation(p, {2, {1.0, 1.0}, h}, ff, cfg, 1.0, diag);
  double worst = 0.0;
  for (const auto& row : rec.diagnostics) worst = std::max(worst, std::abs(row.q_h.value() - 0.5));
  for (double height : analysis::interface_heights(rec.final_state.phi))
    worst = std::max(worst, std::abs(height - 0.5));
  const double tol = 3 * eps * eps;
  return {worst <= tol, "max |q_h - 0.5| = " + sci(worst) + " (tol 3 eps^2 = " + sci(tol) + ")"};
}

Outcome criterion9() {
  const double eps = 1 / (32 * pi);
  const auto p = params_rho(0.1, eps, -8.0, 8.0);
  fem::FlatFront ff;
  ff.q0 = 0.5;
  ff.seed = 1;
  ff.random_modes = 6;
  ff.random_bound = 0.005;
  fem::SolverConfig cfg;
  fem::DiagnosticsSpec diag;
  diag.stride = 5;
  diag.mode_lmax = 6;
  const double h = analysis::ladder_mesh_size(eps).value();
  const auto rec = fem::run_simulation(p, {2, {1.0, 1.0}, h}, ff, cfg, 1.5, diag);

  analysis::ModeSeries series;
  for (const auto& row : rec.diagnostics) {
    series.times.push_back(row.t);
    series.amplitudes.push_back(row.modes);
  }
  const double cap = 0.1;
  std::size_t end = series.times.size() - 1;
  for (std::size_t i = 0; i < series.times.size() && end == series.times.size() - 1; ++i)
    for (int l = 1; l <= 6; ++l)
      if (std::abs(series.amplitudes[i][static_cast<std::size_t>(l)]) >= cap) {
        end = i;
        break;
      }
  const auto a2 = series.magnitude(2);
  double rival = 0.0;
  for (int l = 1; l <= 6; ++l)
    if (l != 2) rival = std::max(rival, series.magnitude(l)[end]);
  const bool dominant = a2[end] >= 2 * rival;

  const auto win = analysis::growth_window(series.times, a2, cap);
  if (!win) return {false, "no linear growth window for l = 2"};
  const std::vector<double> t(series.times.begin() + static_cast<long>(win->begin),
                              series.times.begin() + static_cast<long>(win->end));
  const std::vector<double> a(a2.begin() + static_cast<long>(win->begin),
                              a2.begin() + static_cast<long>(win->end));
  const double fitted = analysis::fit_growth_rate(t, a);
  const auto sp = model::derive_sharp_params(p, 1.0, 1.0);
  const double predicted = sharp::amplification(sp, p.beta, 0.5, sharp::ModeIndex::planar(2)).growth_rate();
  const double rel = std::abs(fitted - predicted) / std::abs(predicted);
  std::ostringstream d;
  d << "t_lin=" << series.times[end] << ": |A2|=" << sci(a2[end]) << ", max other " << sci(rival)
    << "; rate fitted " << fitted << " vs predicted " << predicted << " (rel " << sci(rel)
    << ", window [" << win->t_begin << ", " << win->t_end << "])";
  return {dominant && rel <= 0.3, d.str()};
}

Outcome criterion10() {
  std::ostringstream d;
  bool ok = true;
  fem::SolverConfig cfg;

  // Per-step mass balance with sources over 100 steps.
  {
    const auto p = params_rho(0.1, 1 / (8 * pi), -1.0, 4.0, 1.0, 0.1, -1.0);
    fem::FlatFront ff;
    ff.q0 = 0.3;
    ff.modes = {{1, 0.03}, {3, 0.01}};
    const auto rec = fem::run_simulation(p, {2, {1.0, 1.0}, 1.0 / 64}, ff, cfg, 100 * cfg.tau, {});
    const double tol = 10 * cfg.linear_tol;
    ok = ok && rec.max_mass_defect <= tol;
    d << "mass defect " << sci(rec.max_mass_defect) << " (tol " << sci(tol) << "); ";
  }
  // Uniform state: phi^{n+1} = phi^n + tau S_eps(phi^n).
  {
    const auto p = params_rho(0.1, 1 / (8 * pi), -1.0, 4.0, 1.0, 0.1, 0.5);
    auto mesh = std::make_shared<const fem::StructuredMesh>(fem::StructuredMesh::build(2, {1.0, 1.0}, 1.0 / 32));
    fem::TimeStepper stepper(mesh, p, cfg);
    double worst = 0.0;
    for (double c : {-0.8, -0.2, 0.0, 0.45, 0.9}) {
      auto s = stepper.initial_state(fem::NodalField(
          mesh, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(mesh->node_count()), c)));
      stepper.advance(s);
      const double expect = c + cfg.tau * model::source_S(p.reaction, p.potential, p.epsilon, c);
      worst = std::max(worst, (s.phi.values().array() - expect).abs().maxCoeff());
    }
    ok = ok && worst <= 1e-12;
    d << "uniform update error " << sci(worst) << " (tol 1e-12); ";
  }
  // No sources: mass conserved.
  {
    model::PhaseFieldParams p;
    p.beta = 1.0;
    p.epsilon = 1 / (8 * pi);
    fem::SolverConfig c2 = cfg;
    c2.tau = 1e-5;
    fem::DiagnosticsSpec diag;
    diag.stride = 1;
    const auto rec =
        fem::run_simulation(p, {2, {1.0, 1.0}, 1.0 / 64}, fem::RandomSpinodal{0.1, 3}, c2, 100 * c2.tau, diag);
    double drift = 0.0;
    for (const auto& row : rec.diagnostics)
      drift = std::max(drift, std::abs(row.mass - rec.diagnostics.front().mass));
    ok = ok && drift <= c2.linear_tol;
    d << "zero-source mass drift " << sci(drift) << " (tol " << sci(c2.linear_tol) << ")";
  }
  return {ok, d.str()};
}

/// Connected components of {sign * phi > 0} on the node lattice (4-neighbour).
std::vector<std::vector<std::size_t>> components(const fem::NodalField& phi, double sign) {
  const auto& m = phi.mesh();
  const int n1 = m.nodes_along(0), n2 = m.nodes_along(1);
  std::vector<int> label(phi.size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < phi.size(); ++start) {
    if (label[start] >= 0 || sign * phi[start] <= 0) continue;
    out.emplace_back();
    std::vector<std::size_t> stack{start};
    label[start] = static_cast<int>(out.size()) - 1;
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      out.back().push_back(k);
      const int i = static_cast<int>(k % n1), j = static_cast<int>(k / n1);
      const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
      for (int q = 0; q < 4; ++q) {
        const int a = i + di[q], b = j + dj[q];
        if (a < 0 || b < 0 || a >= n1 || b >= n2) continue;
        const std::size_t nb = m.node_index(a, b);
        if (label[nb] < 0 && sign * phi[nb] > 0) {
          label[nb] = label[start];
          stack.push_back(nb);
        }
      }
    }
  }
  return out;
}

Outcome criterion11() {
  const double eps = 1 / (32 * pi);
  const auto p = params_rho(0.002, eps, -4.0, 0.25);
  fem::SolverConfig cfg;
  const double h = 1.0 / 256;
  const auto rec = fem::run_simulation(p, {2, {2.0, 2.0}, h}, fem::Disk{{1.0, 1.0}, 0.4}, cfg, 5.0, {});
  const auto& phi = rec.final_state.phi;
  const auto& m = phi.mesh();

  const auto row = analysis::row_crossings(phi, 1.0);
  std::size_t column_crossings = 0;
  {
    const int mid = m.nodes_along(0) / 2;
    for (int j = 0; j + 1 < m.nodes_along(1); ++j)
      column_crossings += (phi[m.node_index(mid, j)] > 0) != (phi[m.node_index(mid, j + 1)] > 0);
  }
  const auto plus = components(phi, 1.0);
  const auto minus = components(phi, -1.0);
  // The hole is the minus component that stays off the boundary.
  bool hole_inside = false;
  const int n1 = m.nodes_along(0), n2 = m.nodes_along(1);
  for (const auto& comp : minus) {
    bool touches = false;
    for (std::size_t k : comp) {
      const int i = static_cast<int>(k % n1), j = static_cast<int>(k / n1);
      touches = touches || i == 0 || j == 0 || i == n1 - 1 || j == n2 - 1;
    }
    hole_inside = hole_inside || !touches;
  }
  const bool annulus = row.size() == 4 && column_crossings == 4 && plus.size() == 1 &&
                       minus.size() == 2 && hole_inside;
  std::ostringstream d;
  d << "t=" << rec.final_state.t << ": " << row.size() << " crossings on x2=1, " << column_crossings
    << " on x1=1; " << plus.size() << " positive and " << minus.size() << " negative components";
  return {annulus, d.str()};
}

struct Criterion {
  std::string id;
  std::string name;
  double budget_s;
  bool slow;
  std::function<Outcome()> run;
};

std::vector<Criterion> criteria() {
  return {
      {"1", "S_I closed form vs quadrature", 5, false, [] { return from_check(io::check_si_closed_form()); }},
      {"2", "gamma quadrature", 1, false, [] { return from_check(io::check_gamma()); }},
      {"3", "equipartition and profile ODE", 1, false, [] { return from_check(io::check_equipartition()); }},
      {"4", "translational stability", 1, false, [] { return from_check(io::check_translational_stability()); }},
      {"5", "specialized dispersion", 1, false, [] { return from_check(io::check_specialized_dispersion()); }},
      {"6", "mode-selection prediction", 1, false, [] { return from_check(io::check_mode_selection()); }},
      {"7", "convergence ladder (1D)", 300, false, criterion7},
      {"8", "stationary front", 600, false, criterion8},
      {"9", "mode growth in the PDE", 7200, true, criterion9},
      {"10", "scheme identities", 60, false, criterion10},
      {"11", "shell formation", 7200, true, criterion11},
      {"ladder2d", "convergence ladder (2D, to 1/(32 pi))", 3600, true, ladder2d},
  };
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> wanted;
  bool all = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "all") all = true;
    else wanted.insert(a);
  }
  const auto list = criteria();
  for (const auto& w : wanted) {
    bool known = false;
    for (const auto& c : list) known = known || c.id == w;
    if (!known) {
      std::fprintf(stderr, "unknown criterion '%s'\n", w.c_str());
      return 2;
    }
  }

  int failures = 0;
  for (const auto& c : list) {
    const bool selected = wanted.empty() ? (all || !c.slow) : wanted.count(c.id) > 0;
    if (!selected) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.passed && in_time;
    failures += !pass;
    std::printf("%s criterion %s (%s): %s [%.1f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL",
                c.id.c_str(), c.name.c_str(), o.detail.c_str(), secs, c.budget_s,
                in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
