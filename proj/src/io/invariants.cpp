#include "activech/io/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "activech/fem/initial_data.hpp"
#include "activech/model/potential.hpp"
#include "activech/model/quadrature.hpp"
#include "activech/model/reaction.hpp"
#include "activech/model/sharp_params.hpp"
#include "activech/sharp/planar.hpp"
#include "activech/sharp/stability.hpp"

namespace activech::io {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

/// Passes when the worst observed error stays within tol.
CheckResult bounded(std::string name, double worst, double tol, const std::string& what = "max error") {
  CheckResult r;
  r.name = std::move(name);
  r.passed = std::isfinite(worst) && worst <= tol;
  r.detail = what + " " + sci(worst) + " (tol " + sci(tol) + ")";
  return r;
}

CheckResult predicate(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok, std::move(detail)};
}

/// Runs a check body, turning exceptions into failures.
CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::string("threw: ") + e.what()};
  }
}

// Sixth-order central differences.
double d1(const std::function<double(double)>& f, double z, double h) {
  return (-f(z - 3 * h) + 9 * f(z - 2 * h) - 45 * f(z - h) + 45 * f(z + h) - 9 * f(z + 2 * h) +
          f(z + 3 * h)) /
         (60 * h);
}

double d2(const std::function<double(double)>& f, double z, double h) {
  return (2 * f(z - 3 * h) - 27 * f(z - 2 * h) + 270 * f(z - h) - 490 * f(z) + 270 * f(z + h) -
          27 * f(z + 2 * h) + 2 * f(z + 3 * h)) /
         (180 * h * h);
}

model::SharpParams normalized(double L, double Lt, double beta) {
  model::PhaseFieldParams p;
  p.beta = beta;
  p.reaction = model::reaction_from_rho(beta, p.potential, -1.0, 1.0, 1.0, 1.0);
  return model::derive_sharp_params(p, L, Lt);
}

}  // namespace

CheckResult check_si_closed_form(std::uint64_t seed, int samples) {
  const std::string name = "S_I quadrature vs closed form";
  return guarded(name, [&] {
    const auto pot = model::DoubleWellPotential::quartic();
    std::mt19937_64 gen(seed);
    const auto draw = [&] { return -10.0 + 20.0 * fem::uniform01(gen()); };
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
      model::ReactionSpec r;
      r.k_plus = draw();
      r.k_minus = draw();
      r.l_coef = draw();
      const double closed = sqrt2 / 2.0 * (r.k_plus - r.k_minus) + 2.0 * sqrt2 / 3.0 * r.l_coef;
      worst = std::max(worst, std::abs(model::si_quadrature(r, pot) - closed));
    }
    return bounded(name, worst, 1e-6);
  });
}

CheckResult check_gamma() {
  const std::string name = "gamma quadrature";
  return guarded(name, [&] {
    const double g = model::gamma_quadrature(model::DoubleWellPotential::quartic());
    return bounded(name, std::abs(g - 2.0 * sqrt2 / 3.0), 1e-8);
  });
}

CheckResult check_equipartition() {
  const std::string name = "profile equipartition and ODE";
  return guarded(name, [&] {
    const auto pot = model::DoubleWellPotential::quartic();
    const auto phi = [&](double z) { return model::profile_Phi0(pot, z); };
    constexpr double h = 1e-2;
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double z = -10.0 + 20.0 * k / 999.0;
      const double v = phi(z);
      const double p1 = d1(phi, z, h);
      const double p2 = d2(phi, z, h);
      worst = std::max({worst, std::abs(0.5 * p1 * p1 - pot.psi(v)), std::abs(p2 - pot.dpsi(v))});
    }
    return bounded(name, worst, 1e-9);
  });
}

CheckResult check_translational_stability() {
  const std::string name = "translational stability";
  return guarded(name, [&] {
    double worst_closed = 0.0, worst_fd = 0.0;
    for (double L : {1.0, 2.0, 4.0}) {
      const auto sp = normalized(L, 1.0, 0.1);
      const double q = 0.5 * L;
      const double f = sharp::amplification(sp, 0.1, q, sharp::ModeIndex::planar(0)).factor;
      const double sech = 1.0 / std::cosh(0.5 * L);
      worst_closed = std::max(worst_closed, std::abs(f + 2.0 * sech * sech));
      constexpr double h = 1e-4;
      const double dH = (sharp::velocity_H(sp, q + h) - sharp::velocity_H(sp, q - h)) / (2.0 * h);
      worst_fd = std::max(worst_fd, std::abs(f - 2.0 * dH));
    }
    CheckResult r;
    r.name = name;
    r.passed = worst_closed <= 1e-12 && worst_fd <= 1e-8;
    r.detail = "vs -2 sech^2: " + sci(worst_closed) + " (tol 1e-12); vs 2 H'(q*): " + sci(worst_fd) +
               " (tol 1e-8)";
    return r;
  });
}

CheckResult check_specialized_dispersion() {
  const std::string name = "specialized dispersion and beta_crit";
  return guarded(name, [&] {
    const double L = 1.0, Lt = 1.0, beta = 0.1;
    const auto sp = normalized(L, Lt, beta);
    double worst_formula = 0.0, worst_root = 0.0;
    for (int l = 0; l <= 6; ++l) {
      const auto mode = sharp::ModeIndex::planar(l);
      const double general = sharp::amplification(sp, beta, 0.5 * L, mode).factor;
      const double closed = sharp::amplification_normalized(L, Lt, sp.gamma, beta, mode);
      worst_formula = std::max(worst_formula, std::abs(general - closed));
      if (l > 0) {
        const double bc = sharp::beta_crit(L, Lt, sp.gamma, mode);
        worst_root = std::max(worst_root, std::abs(sharp::amplification(sp, bc, 0.5 * L, mode).factor));
      }
    }
    CheckResult r;
    r.name = name;
    r.passed = worst_formula <= 1e-12 && worst_root <= 1e-10;
    r.detail = "general vs closed form: " + sci(worst_formula) + " (tol 1e-12); factor at beta_crit: " +
               sci(worst_root) + " (tol 1e-10)";
    return r;
  });
}

CheckResult check_mode_selection() {
  const std::string name = "mode selection";
  return guarded(name, [&] {
    model::PhaseFieldParams p;
    p.beta = 0.1;
    p.reaction = model::reaction_from_rho(p.beta, p.potential, -8.0, 8.0, 1.0, 1.0);
    const auto sp = model::derive_sharp_params(p, 1.0, 1.0);
    int best = -1;
    double best_f = -1e300;
    std::ostringstream os;
    for (int l = 0; l <= 10; ++l) {
      const double f = sharp::amplification(sp, p.beta, 0.5, sharp::ModeIndex::planar(l)).factor;
      if (l <= 3) os << "factor(" << l << ") = " << f << "; ";
      if (f > best_f) {
        best_f = f;
        best = l;
      }
    }
    os << "argmax " << best;
    return predicate(name, best == 2, os.str());
  });
}

std::vector<CheckResult> model_checks() {
  std::vector<CheckResult> out;
  const auto pot = model::DoubleWellPotential::quartic();

  out.push_back(guarded("quartic potential assumptions", [&] {
    pot.validate();
    double worst = 0.0;
    for (int k = 0; k <= 400; ++k) {
      const double r = -2.0 + 4.0 * k / 400.0;
      worst = std::max({worst, std::abs(pot.psi(r) - pot.psi(-r)),
                        std::abs(pot.psi(r) - 0.25 * (1 - r * r) * (1 - r * r))});
    }
    const bool wells = pot.ddpsi_plus() == 2.0 && pot.ddpsi_minus() == 2.0;
    auto r = bounded("quartic potential assumptions", worst, 1e-12, "evenness/closed form");
    r.passed = r.passed && wells;
    return r;
  }));

  out.push_back(guarded("potential derivative consistency", [&] {
    double worst = 0.0;
    constexpr double h = 1e-5;
    for (int k = 0; k <= 100; ++k) {
      const double r = -1.5 + 3.0 * k / 100.0;
      worst = std::max({worst, std::abs(pot.dpsi(r) - (pot.psi(r + h) - pot.psi(r - h)) / (2 * h)),
                        std::abs(pot.ddpsi(r) - (pot.dpsi(r + h) - pot.dpsi(r - h)) / (2 * h))});
    }
    return bounded("potential derivative consistency", worst, 1e-8);
  }));

  out.push_back(guarded("interpolation endpoint conditions", [&] {
    double worst = 0.0;
    for (double rc : {1.0, 0.5}) {
      worst = std::max({worst, std::abs(model::interp_G(1, rc, rc, pot) - 1.0),
                        std::abs(model::interp_G(1, -rc, rc, pot)),
                        std::abs(model::interp_G(2, rc, rc, pot)),
                        std::abs(model::interp_G(2, -rc, rc, pot)),
                        std::abs(model::interp_G(4, rc, rc, pot)),
                        std::abs(model::interp_G(4, -rc, rc, pot))});
    }
    worst = std::max(worst, std::abs(model::interp_G2_hat(0.0, pot) - 0.25));
    // One-sided slopes G2'(-1) = 1 and G3'(1) = 1 (first-order differences).
    constexpr double h = 1e-6;
    const double slope = std::max(
        std::abs((model::interp_G(2, -1.0 + h, 1.0, pot) - model::interp_G(2, -1.0, 1.0, pot)) / h - 1.0),
        std::abs((model::interp_G(3, 1.0, 1.0, pot) - model::interp_G(3, 1.0 - h, 1.0, pot)) / h - 1.0));
    CheckResult r;
    r.name = "interpolation endpoint conditions";
    r.passed = worst <= 1e-12 && slope <= 1e-5;
    r.detail = "endpoint values " + sci(worst) + " (tol 1e-12); end slopes " + sci(slope) + " (tol 1e-5)";
    return r;
  }));

  out.push_back(guarded("source continuity at +-r_c", [&] {
    double jump = 0.0, kink = 0.0;
    for (double rc : {1.0, 0.7}) {
      model::ReactionSpec s{-1.0, 4.0, 0.3, 2.0, -1.0, rc};
      const auto f = [&](double r) { return model::source_S(s, pot, 0.1, r); };
      constexpr double h = 1e-6;
      for (double edge : {rc, -rc}) {
        const double mid = f(edge);
        jump = std::max({jump, std::abs(f(edge - h) - mid), std::abs(f(edge + h) - mid)});
        // One-sided second-order slopes must agree.
        const double sl = (3 * mid - 4 * f(edge - h) + f(edge - 2 * h)) / (2 * h);
        const double sr = (-3 * mid + 4 * f(edge + h) - f(edge + 2 * h)) / (2 * h);
        kink = std::max(kink, std::abs(sl - sr));
      }
    }
    CheckResult r;
    r.name = "source continuity at +-r_c";
    r.passed = jump <= 1e-4 && kink <= 1e-3;
    r.detail = "value jump " + sci(jump) + " (tol 1e-4); slope jump " + sci(kink) + " (tol 1e-3)";
    return r;
  }));

  out.push_back(guarded("source values at the wells", [&] {
    model::ReactionSpec s{-1.0, 4.0, 2.0, 0.5, 0.7, 1.0};
    double worst = std::max(std::abs(model::source_S(s, pot, 0.1, 1.0) + 1.0),
                            std::abs(model::source_S(s, pot, 0.1, -1.0) - 4.0));
    model::ReactionSpec t{-1.0, 0.0, 2.0, 0.0, 0.0, 1.0};
    worst = std::max(worst, std::abs(model::source_S(t, pot, 0.1, 1.5) + 11.0));
    return bounded("source values at the wells", worst, 1e-12);
  }));

  out.push_back(guarded("mobility bounds", [&] {
    model::MobilitySpec m{0.5, 0.2};
    bool ok = std::abs(model::mobility(m, 0.0) - 0.35) < 1e-15 && model::mobility(m, 3.0) == 0.5 &&
              model::mobility(m, -3.0) == 0.2;
    for (int k = 0; k <= 100; ++k) {
      const double v = model::mobility(m, -2.0 + 4.0 * k / 100.0);
      ok = ok && v >= 0.2 && v <= 0.5;
    }
    return predicate("mobility bounds", ok, ok ? "within [m_min, m_max]" : "out of bounds");
  }));

  out.push_back(check_gamma());
  out.push_back(check_equipartition());
  out.push_back(check_si_closed_form());

  out.push_back(guarded("S_I symmetric relaxation", [&] {
    model::ReactionSpec s;
    s.k_plus = s.k_minus = 1.0;
    s.r_c = 0.5;
    return bounded("S_I symmetric relaxation", std::abs(model::si_quadrature(s, pot)), 1e-8);
  }));

  out.push_back(guarded("nondimensional identity", [&] {
    model::PhaseFieldParams p;
    p.beta = 0.1;
    p.reaction = model::reaction_from_rho(p.beta, p.potential, -1.0, 4.0, 1.0, 0.1, -1.0);
    const auto sp = model::derive_sharp_params(p, 1.0, 1.0);
    const auto nd = model::nondimensionalize(p, sp);
    return bounded("nondimensional identity", std::abs(nd.beta_star - nd.c_l / nd.x_tilde), 1e-12);
  }));
  return out;
}

std::vector<CheckResult> planar_checks() {
  std::vector<CheckResult> out;

  out.push_back(guarded("planar chemical potential residual", [&] {
    model::PhaseFieldParams p;
    p.beta = 0.1;
    p.reaction = model::reaction_from_rho(p.beta, p.potential, -1.0, 4.0, 1.0, 0.1, -1.0);
    p.mobility = {0.7, 1.3};
    const auto sp = model::derive_sharp_params(p, 1.0, 1.0);
    const double q = 0.3;
    double worst = 0.0;
    constexpr double h = 1e-4;
    for (int k = 1; k <= 20; ++k) {
      const double zp = q * k / 21.0;
      const double zm = q + (1.0 - q) * k / 21.0;
      const auto fp = [&](double z) { return sharp::mu_planar(sp, sharp::Side::plus, q, z); };
      const auto fm = [&](double z) { return sharp::mu_planar(sp, sharp::Side::minus, q, z); };
      const double rp = -sp.m_plus * (fp(zp + h) - 2 * fp(zp) + fp(zp - h)) / (h * h) +
                        sp.rho_plus * fp(zp) - sp.s_plus;
      const double rm = -sp.m_minus * (fm(zm + h) - 2 * fm(zm) + fm(zm - h)) / (h * h) +
                        sp.rho_minus * fm(zm) - sp.s_minus;
      worst = std::max({worst, std::abs(rp) / std::abs(sp.s_plus), std::abs(rm) / std::abs(sp.s_minus)});
    }
    worst = std::max(worst, std::abs(sharp::mu_planar(sp, sharp::Side::plus, q, q)));
    return bounded("planar chemical potential residual", worst, 1e-6, "relative residual");
  }));

  out.push_back(guarded("symmetric stationary front", [&] {
    const auto sp = normalized(1.0, 1.0, 0.1);
    const auto qs = sharp::find_stationary(sp);
    bool decreasing = true;
    double prev = 1e300;
    for (int k = 1; k < 1000; ++k) {
      const double v = sharp::velocity_H(sp, k / 1000.0);
      decreasing = decreasing && v < prev;
      prev = v;
    }
    const double err = qs ? std::abs(*qs - 0.5) : 1.0;
    auto r = bounded("symmetric stationary front", err, 1e-10, "|q* - L/2|");
    r.passed = r.passed && decreasing;
    if (!decreasing) r.detail += "; H not strictly decreasing";
    return r;
  }));

  out.push_back(guarded("trajectory approaches q*", [&] {
    const auto sp = normalized(1.0, 1.0, 0.1);
    sharp::PlanarConfig pc;
    pc.sharp = sp;
    pc.q0 = 0.3;
    pc.t_end = 10.0;
    const auto tr = sharp::integrate_q(pc);
    bool monotone = !tr.boundary_hit;
    for (std::size_t k = 1; k < tr.points.size(); ++k)
      monotone = monotone && tr.points[k].q >= tr.points[k - 1].q && tr.points[k].q <= 0.5;
    return predicate("trajectory approaches q*", monotone && std::abs(tr.final_q() - 0.5) < 1e-2,
                     "q(10) = " + sci(tr.final_q()));
  }));

  out.push_back(check_translational_stability());
  out.push_back(check_specialized_dispersion());
  out.push_back(check_mode_selection());

  out.push_back(guarded("surface tension stabilises short waves", [&] {
    const auto sp = normalized(1.0, 1.0, 0.1);
    std::vector<double> f;
    for (int l = 0; l <= 50; ++l)
      f.push_back(sharp::amplification(sp, 0.1, 0.5, sharp::ModeIndex::planar(l)).factor);
    const auto peak = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
    bool ok = true;
    for (std::size_t l = peak + 1; l < f.size(); ++l) ok = ok && f[l] < f[l - 1];
    return predicate("surface tension stabilises short waves", ok,
                     "peak at l = " + std::to_string(peak) + ", factor(50) = " + sci(f.back()));
  }));

  out.push_back(guarded("mode lattice", [&] {
    const auto lsq = [](int d, int m) {
      std::vector<int> v;
      for (const auto& r : sharp::enumerate_modes(d, m).representatives) v.push_back(r.l_sq);
      return v;
    };
    const bool ok = lsq(2, 16) == std::vector<int>{0, 1, 4, 9, 16} &&
                    lsq(3, 10) == std::vector<int>{0, 1, 2, 4, 5, 8, 9, 10} &&
                    lsq(3, 0) == std::vector<int>{0};
    return predicate("mode lattice", ok, ok ? "sums of squares as expected" : "unexpected |l|^2 set");
  }));
  return out;
}

std::vector<CheckResult> invariant_suite() {
  auto out = model_checks();
  const auto planar = planar_checks();
  out.insert(out.end(), planar.begin(), planar.end());
  return out;
}

}  // namespace activech::io
