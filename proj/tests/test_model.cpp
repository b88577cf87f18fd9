#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "activech/error.hpp"
#include "activech/io/invariants.hpp"
#include "activech/model/potential.hpp"
#include "activech/model/quadrature.hpp"
#include "activech/model/reaction.hpp"
#include "activech/model/sharp_params.hpp"

using namespace activech;
using model::DoubleWellPotential;

TEST_SUITE("model") {
  TEST_CASE("quartic well in closed form") {
    const auto pot = DoubleWellPotential::quartic();
    for (double r : {-1.7, -1.0, -0.3, 0.0, 0.4, 1.0, 2.2}) {
      CHECK(pot.psi(r) == doctest::Approx(0.25 * (1 - r * r) * (1 - r * r)).epsilon(1e-15));
      CHECK(pot.dpsi(r) == doctest::Approx(r * r * r - r).epsilon(1e-15));
      CHECK(pot.ddpsi(r) == doctest::Approx(3 * r * r - 1).epsilon(1e-15));
    }
    CHECK(pot.ddpsi_plus() == 2.0);
    CHECK(pot.ddpsi_minus() == 2.0);
  }

  TEST_CASE("custom wells are validated") {
    const auto odd = DoubleWellPotential::custom([](double r) { return (1 - r * r) * (1 - r * r) + r; },
                                                 [](double r) { return 4 * r * r * r - 4 * r + 1; },
                                                 [](double r) { return 12 * r * r - 4; }, 8.0, 8.0);
    CHECK_THROWS_AS(odd.validate(), ConfigError);
  }

  TEST_CASE("gamma of the quartic") {
    CHECK(std::abs(model::gamma_quadrature(DoubleWellPotential::quartic()) -
                   2.0 * std::numbers::sqrt2 / 3.0) <= 1e-8);
  }

  TEST_CASE("quartic profile is tanh(z / sqrt 2)") {
    const auto pot = DoubleWellPotential::quartic();
    for (double z = -8.0; z <= 8.0; z += 0.37)
      CHECK(model::profile_Phi0(pot, z) == doctest::Approx(std::tanh(z / std::numbers::sqrt2)).epsilon(1e-14));
  }

  TEST_CASE("custom profile matches the quartic it reproduces") {
    const auto q = DoubleWellPotential::quartic();
    const auto c = DoubleWellPotential::custom([&](double r) { return q.psi(r); },
                                               [&](double r) { return q.dpsi(r); },
                                               [&](double r) { return q.ddpsi(r); }, 2.0, 2.0);
    const model::InterfaceProfile prof(c);
    for (double z = -6.0; z <= 6.0; z += 0.5)
      CHECK(std::abs(prof(z) - std::tanh(z / std::numbers::sqrt2)) <= 1e-8);
  }

  TEST_CASE("S_I closed form for r_c = 1") {
    const auto pot = DoubleWellPotential::quartic();
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 20; ++i) {
      model::ReactionSpec s;
      s.k_plus = u(gen);
      s.k_minus = u(gen);
      s.l_coef = u(gen);
      const double expect = std::numbers::sqrt2 / 2 * (s.k_plus - s.k_minus) +
                            2 * std::numbers::sqrt2 / 3 * s.l_coef;
      CHECK(std::abs(model::si_quadrature(s, pot) - expect) <= 1e-6);
    }
  }

  TEST_CASE("source at the wells equals the bulk rates") {
    const auto pot = DoubleWellPotential::quartic();
    model::ReactionSpec s{-1.0, 4.0, 2.0, 0.5, 0.7, 1.0};
    for (double eps : {0.1, 0.01}) {
      CHECK(model::source_S(s, pot, eps, 1.0) == doctest::Approx(-1.0).epsilon(1e-12));
      CHECK(model::source_S(s, pot, eps, -1.0) == doctest::Approx(4.0).epsilon(1e-12));
    }
  }

  TEST_CASE("interpolation functions reject arguments outside [-r_c, r_c]") {
    const auto pot = DoubleWellPotential::quartic();
    CHECK_THROWS_AS(model::interp_G(1, 0.8, 0.5, pot), DomainError);
    CHECK_THROWS_AS(model::interp_G(5, 0.0, 1.0, pot), DomainError);
  }

  TEST_CASE("mobility is affine and clamped") {
    model::MobilitySpec m{2.0, 1.0};
    CHECK(model::mobility(m, 1.0) == 2.0);
    CHECK(model::mobility(m, -1.0) == 1.0);
    CHECK(model::mobility(m, 0.0) == doctest::Approx(1.5));
    CHECK(model::mobility(m, 5.0) == 2.0);
    CHECK(model::mobility(m, -5.0) == 1.0);
  }

  TEST_CASE("rho and K are related through beta psi''") {
    const auto pot = DoubleWellPotential::quartic();
    const auto r = model::reaction_from_rho(0.1, pot, -1, 4, 1.0, 0.1);
    CHECK(r.k_plus == doctest::Approx(0.2));
    CHECK(r.k_minus == doctest::Approx(0.02));
    model::PhaseFieldParams p;
    p.beta = 0.1;
    p.reaction = r;
    const auto sp = model::derive_sharp_params(p, 1.0, 1.0);
    CHECK(sp.rho_plus == doctest::Approx(1.0));
    CHECK(sp.rho_minus == doctest::Approx(0.1));
    CHECK(*sp.d_minus == doctest::Approx(40.0));
  }

  TEST_CASE("continuous-model invariant suite passes") {
    for (const auto& c : io::model_checks()) {
      INFO(c.name << ": " << c.detail);
      CHECK(c.passed);
    }
  }
}
