#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "doctest.h"

#include "activech/analysis/convergence.hpp"
#include "activech/analysis/modes.hpp"
#include "activech/analysis/tracking.hpp"
#include "activech/error.hpp"
#include "activech/fem/initial_data.hpp"
#include "activech/fem/mesh.hpp"

using namespace activech;

namespace {

std::shared_ptr<const fem::StructuredMesh> square(double h) {
  return std::make_shared<const fem::StructuredMesh>(fem::StructuredMesh::build(2, {1.0, 1.0}, h));
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("tracking the interpolated tanh front") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.2, 0.8);
    const double eps = 1.0 / (8 * std::numbers::pi);
    for (double h : {1.0 / 32, 1.0 / 64}) {
      auto mesh = std::make_shared<const fem::StructuredMesh>(fem::StructuredMesh::build(1, {1.0, 1.0}, h));
      for (int i = 0; i < 10; ++i) {
        fem::FlatFront ff;
        ff.q0 = u(gen);
        const auto phi = fem::init_field(mesh, ff, eps);
        CHECK(std::abs(analysis::track_interface(phi) - ff.q0) <= 2 * h * h / eps);
      }
    }
  }

  TEST_CASE("several crossings are reported and followed") {
    auto mesh = std::make_shared<const fem::StructuredMesh>(fem::StructuredMesh::build(1, {1.0, 1.0}, 1.0 / 64));
    Eigen::VectorXd v(65);
    for (int i = 0; i <= 64; ++i) v[i] = std::cos(3 * std::numbers::pi * i / 64.0);
    const fem::NodalField phi(mesh, v);
    const auto xs = analysis::row_crossings(phi);
    REQUIRE(xs.size() == 3);
    CHECK(xs[1] == doctest::Approx(0.5).epsilon(1e-3));
    analysis::InterfaceTracker tracker(0.0, 0.52);
    const auto r = tracker.update(phi);
    CHECK(r.multiple());
    CHECK(r.q == doctest::Approx(xs[1]));
    CHECK(tracker.multiplicity_seen());
  }

  TEST_CASE("tracking rejects a row off the lattice") {
    const auto phi = fem::init_field(square(1.0 / 16), fem::FlatFront{}, 0.05);
    CHECK_THROWS_AS(analysis::row_crossings(phi, 0.01), ConfigError);
  }

  TEST_CASE("mode amplitudes recover injected cosines") {
    const double h = 1.0 / 128;
    const auto mesh = square(h);
    const double eps = 1.0 / (16 * std::numbers::pi);
    // Amplitudes from 10 h up, modes up to Lt / (4 h).
    for (int l : {1, 2, 5, 11, 20, 32})
      for (double amp : {10 * h, -0.15}) {
        fem::FlatFront ff;
        ff.q0 = 0.5;
        ff.modes = {{l, amp}};
        const auto a = analysis::mode_amplitudes(fem::init_field(mesh, ff, eps), 32);
        INFO("l = " << l << ", A = " << amp);
        CHECK(std::abs(a[static_cast<std::size_t>(l)] - amp) <= 0.02 * std::abs(amp));
        CHECK(std::abs(a[0] - 0.5) <= 0.02 * std::abs(amp));
      }
  }

  TEST_CASE("growth fit is exact on exponentials") {
    std::vector<double> t, a;
    for (int i = 0; i < 20; ++i) {
      t.push_back(0.05 * i);
      a.push_back(0.003 * std::exp(2.5 * t.back()));
    }
    CHECK(analysis::fit_growth_rate(t, a) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK_THROWS_AS(analysis::fit_growth_rate({0.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(analysis::fit_growth_rate({0.0, 1.0}, {1.0, -1.0}), DomainError);
  }

  TEST_CASE("growth window spans the linear regime") {
    std::vector<double> t, a;
    for (int i = 0; i <= 100; ++i) {
      t.push_back(0.01 * i);
      a.push_back(0.001 * std::exp(4.0 * t.back()));
    }
    const auto w = analysis::growth_window(t, a, 0.03);
    REQUIRE(w);
    CHECK(a[w->begin] > 3 * a[0]);
    CHECK(a[w->begin - 1] <= 3 * a[0]);
    CHECK(a[w->end - 1] <= 0.03);
    CHECK(a[w->end] > 0.03);
    CHECK_FALSE(analysis::growth_window(t, std::vector<double>(t.size(), 0.001), 0.03));
  }

  TEST_CASE("EOC uses the epsilon ratio") {
    CHECK(*analysis::eoc(4e-2, 1e-2, 0.2, 0.1) == doctest::Approx(2.0));
    CHECK_FALSE(analysis::eoc(0.0, 1e-2, 0.2, 0.1));
    CHECK_FALSE(analysis::eoc(1e-2, 1e-3, 0.1, 0.1));
  }

  TEST_CASE("convergence setup validation") {
    analysis::ConvergenceSetup s;
    s.params.beta = 0.1;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.epsilons = {1.0 / (4 * std::numbers::pi)};
    s.q0 = 1.5;
    CHECK_THROWS_AS(s.validate(), ConfigError);
  }
}
