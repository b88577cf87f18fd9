#include <cmath>

#include "doctest.h"

#include "activech/error.hpp"
#include "activech/io/invariants.hpp"
#include "activech/model/quadrature.hpp"
#include "activech/model/sharp_params.hpp"
#include "activech/sharp/planar.hpp"
#include "activech/sharp/stability.hpp"

using namespace activech;

namespace {

model::SharpParams sharp_from(double beta, double s_plus, double s_minus, double rho_plus = 1.0,
                              double rho_minus = 1.0, double L = 1.0, double Lt = 1.0) {
  model::PhaseFieldParams p;
  p.beta = beta;
  p.reaction = model::reaction_from_rho(beta, p.potential, s_plus, s_minus, rho_plus, rho_minus);
  return model::derive_sharp_params(p, L, Lt);
}

}  // namespace

TEST_SUITE("sharp") {
  TEST_CASE("symmetric sources keep the front at L / 2") {
    const auto sp = sharp_from(0.1, -1.0, 1.0);
    const auto q = sharp::find_stationary(sp);
    REQUIRE(q);
    CHECK(*q == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(sharp::velocity_H(sp, 0.5)) <= 1e-12);
  }

  TEST_CASE("front ODE started at q* stays there") {
    sharp::PlanarConfig cfg;
    cfg.sharp = sharp_from(0.1, -1.0, 1.0);
    cfg.q0 = 0.5;
    cfg.t_end = 1.0;
    cfg.dt = 1e-3;
    const auto traj = sharp::integrate_q(cfg);
    for (const auto& pt : traj.points) CHECK(std::abs(pt.q - 0.5) <= 1e-12);
  }

  TEST_CASE("RK4 trajectory converges at fourth order") {
    sharp::PlanarConfig cfg;
    cfg.sharp = sharp_from(0.1, -1.0, 4.0, 1.0, 0.1);
    cfg.q0 = 0.3;
    cfg.t_end = 1.0;
    cfg.dt = 1e-4;
    const double ref = sharp::integrate_q(cfg).final_q();
    cfg.dt = 0.02;
    const double e1 = std::abs(sharp::integrate_q(cfg).final_q() - ref);
    cfg.dt = 0.01;
    const double e2 = std::abs(sharp::integrate_q(cfg).final_q() - ref);
    CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.15));
  }

  TEST_CASE("mode selection in the 2-mode setting") {
    const auto sp = sharp_from(0.1, -8.0, 8.0);
    int best = -1;
    double best_factor = -1e300;
    for (int l = 0; l <= 10; ++l) {
      const double f = sharp::amplification(sp, 0.1, 0.5, sharp::ModeIndex::planar(l)).factor;
      if (f > best_factor) {
        best_factor = f;
        best = l;
      }
    }
    CHECK(best == 2);
  }

  TEST_CASE("critical beta by bisection matches the closed form") {
    const auto sp = sharp_from(1.0, -1.0, 1.0, 1.0, 1.0, 2.0, 1.0);
    const double gamma = model::gamma_quadrature(model::DoubleWellPotential::quartic());
    for (int l = 1; l <= 4; ++l) {
      const auto m = sharp::ModeIndex::planar(l);
      const auto numeric = sharp::critical_beta(sp, 1.0, m);
      REQUIRE(numeric);
      CHECK(*numeric == doctest::Approx(sharp::beta_crit(2.0, 1.0, gamma, m)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(sharp::beta_crit(2.0, 1.0, gamma, sharp::ModeIndex::planar(0)), DomainError);
  }

  TEST_CASE("3D mode lattice") {
    const auto e = sharp::enumerate_modes(3, 2);
    CHECK(e.all.size() == 4);
    REQUIRE(e.representatives.size() == 3);
    CHECK(e.representatives[0].l_sq == 0);
    CHECK(e.representatives[1].l_sq == 1);
    CHECK(e.representatives[2].l_sq == 2);
  }

  TEST_CASE("planar tools reject nonpositive rho") {
    model::PhaseFieldParams p;
    p.beta = 0.1;
    p.reaction.s_plus = -1.0;
    p.reaction.s_minus = 1.0;
    const auto sp = model::derive_sharp_params(p, 1.0, 1.0);
    CHECK_FALSE(sp.planar_supported());
    CHECK_THROWS_AS(sp.require_planar(), ConfigError);
  }

  TEST_CASE("planar invariant suite passes") {
    for (const auto& c : io::planar_checks()) {
      INFO(c.name << ": " << c.detail);
      CHECK(c.passed);
    }
  }
}
