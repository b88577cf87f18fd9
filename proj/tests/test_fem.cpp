#include <cmath>
#include <memory>
#include <numbers>

#include "doctest.h"

#include "activech/analysis/convergence.hpp"
#include "activech/error.hpp"
#include "activech/fem/energy.hpp"
#include "activech/fem/initial_data.hpp"
#include "activech/fem/mesh.hpp"
#include "activech/fem/simulation.hpp"
#include "activech/fem/stepper.hpp"
#include "activech/model/sharp_params.hpp"

using namespace activech;
using fem::CornerLumping;
using fem::StructuredMesh;

namespace {

model::PhaseFieldParams front_params(double epsilon) {
  model::PhaseFieldParams p;
  p.beta = 0.1;
  p.epsilon = epsilon;
  p.reaction = model::reaction_from_rho(0.1, p.potential, -1.0, 4.0, 1.0, 0.1, -1.0);
  return p;
}

fem::SimState uniform_state(std::shared_ptr<const StructuredMesh> mesh, double c,
                            const fem::TimeStepper& stepper) {
  return stepper.initial_state(fem::NodalField(mesh, Eigen::VectorXd::Constant(
                                                         static_cast<Eigen::Index>(mesh->node_count()), c)));
}

}  // namespace

TEST_SUITE("fem") {
  TEST_CASE("lumped weights sum to the domain volume") {
    for (auto corners : {CornerLumping::tensor, CornerLumping::incident_area}) {
      const auto m = StructuredMesh::build(2, {2.0, 1.0}, 0.125, corners);
      CHECK(m.node_count() == 17 * 9);
      CHECK(m.element_count() == 2 * 16 * 8);
      double s = 0.0;
      for (double w : m.lumped_weights()) s += w;
      CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    }
    const auto line = StructuredMesh::build(1, {1.0, 1.0}, 0.25);
    CHECK(line.node_count() == 5);
    CHECK(line.lumped_weights().front() == doctest::Approx(0.125));
  }

  TEST_CASE("mesh size must divide the lengths") {
    CHECK_THROWS_AS(StructuredMesh::build(2, {1.0, 1.0}, 0.3), ConfigError);
  }

  TEST_CASE("epsilon ladder mesh rule") {
    for (int k = 2; k <= 6; ++k) {
      const double eps = 1.0 / (std::ldexp(1.0, k) * std::numbers::pi);
      const auto h = analysis::ladder_mesh_size(eps);
      REQUIRE(h);
      CHECK(*h == std::ldexp(1.0, -(3 + k)));
    }
    CHECK_FALSE(analysis::ladder_mesh_size(0.05));
  }

  TEST_CASE("uniform state follows the explicit source update") {
    auto p = front_params(0.05);
    p.reaction.l_coef = 0.7;
    auto mesh = std::make_shared<const StructuredMesh>(StructuredMesh::build(2, {1.0, 1.0}, 1.0 / 16));
    fem::SolverConfig cfg;
    cfg.tau = 1e-3;
    fem::TimeStepper stepper(mesh, p, cfg);
    for (double c : {-0.6, 0.0, 0.3, 0.95}) {
      auto s = uniform_state(mesh, c, stepper);
      stepper.advance(s);
      const double expect = c + cfg.tau * model::source_S(p.reaction, p.potential, p.epsilon, c);
      CHECK((s.phi.values().array() - expect).abs().maxCoeff() <= 1e-12);
    }
  }

  TEST_CASE("zero sources conserve mass") {
    model::PhaseFieldParams p;
    p.beta = 1.0;
    p.epsilon = 1.0 / (8 * std::numbers::pi);
    fem::SolverConfig cfg;
    cfg.tau = 1e-5;
    fem::DiagnosticsSpec diag;
    diag.stride = 1;
    fem::MeshSpec ms{2, {1.0, 1.0}, 1.0 / 64};
    const auto rec = fem::run_simulation(p, ms, fem::RandomSpinodal{0.1, 5}, cfg, 20 * cfg.tau, diag);
    const double m0 = rec.diagnostics.front().mass;
    for (const auto& row : rec.diagnostics) CHECK(std::abs(row.mass - m0) <= cfg.linear_tol);
    // Without sources the scheme dissipates the free energy.
    for (std::size_t i = 1; i < rec.diagnostics.size(); ++i)
      CHECK(rec.diagnostics[i].energy <= rec.diagnostics[i - 1].energy + 1e-12);
  }

  TEST_CASE("mass balance holds step by step") {
    const auto p = front_params(1.0 / (8 * std::numbers::pi));
    fem::SolverConfig cfg;
    fem::MeshSpec ms{2, {1.0, 1.0}, 1.0 / 64};
    fem::FlatFront ff;
    ff.q0 = 0.3;
    ff.modes = {{1, 0.02}};
    const auto rec = fem::run_simulation(p, ms, ff, cfg, 20 * cfg.tau, fem::DiagnosticsSpec{});
    CHECK(rec.max_mass_defect <= 10 * cfg.linear_tol);
  }

  TEST_CASE("flat fronts evolve identically in 1D and 2D") {
    const auto p = front_params(1.0 / (4 * std::numbers::pi));
    fem::SolverConfig cfg;
    fem::FlatFront ff;
    ff.q0 = 0.3;
    const double h = 1.0 / 32;
    const auto r1 = fem::run_simulation(p, {1, {1.0, 1.0}, h}, ff, cfg, 0.05, {});
    const auto r2 = fem::run_simulation(p, {2, {1.0, 1.0}, h}, ff, cfg, 0.05, {});
    const auto& m2 = r2.final_state.phi.mesh();
    double worst = 0.0;
    for (int j = 0; j < m2.nodes_along(1); ++j)
      for (int i = 0; i < m2.nodes_along(0); ++i)
        worst = std::max(worst, std::abs(r2.final_state.phi[m2.node_index(i, j)] -
                                         r1.final_state.phi[static_cast<std::size_t>(i)]));
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("centred disk keeps the mesh symmetries") {
    auto p = front_params(1.0 / (8 * std::numbers::pi));
    fem::SolverConfig cfg;
    const auto rec = fem::run_simulation(p, {2, {1.0, 1.0}, 1.0 / 32}, fem::Disk{{0.5, 0.5}, 0.25}, cfg,
                                         10 * cfg.tau, {});
    const auto& phi = rec.final_state.phi;
    const auto& m = phi.mesh();
    const int n = m.nodes_along(0);
    double transpose = 0.0, reflect = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double v = phi[m.node_index(i, j)];
        transpose = std::max(transpose, std::abs(v - phi[m.node_index(j, i)]));
        reflect = std::max(reflect, std::abs(v - phi[m.node_index(n - 1 - i, n - 1 - j)]));
      }
    CHECK(transpose <= 1e-10);
    CHECK(reflect <= 1e-10);
  }

  TEST_CASE("spectral GMRES and the direct solver agree") {
    const auto p = front_params(1.0 / (8 * std::numbers::pi));
    fem::FlatFront ff;
    ff.q0 = 0.4;
    ff.modes = {{2, 0.03}};
    fem::SolverConfig direct, krylov;
    direct.linear_solver = fem::LinearSolverKind::direct;
    krylov.linear_solver = fem::LinearSolverKind::spectral_gmres;
    const fem::MeshSpec ms{2, {1.0, 1.0}, 1.0 / 32};
    const auto a = fem::run_simulation(p, ms, ff, direct, 5e-3, {});
    const auto b = fem::run_simulation(p, ms, ff, krylov, 5e-3, {});
    CHECK((a.final_state.phi.values() - b.final_state.phi.values()).cwiseAbs().maxCoeff() <= 1e-8);
  }

  TEST_CASE("spectral GMRES needs tensor corner lumping") {
    const auto p = front_params(1.0 / (8 * std::numbers::pi));
    fem::SolverConfig cfg;
    cfg.linear_solver = fem::LinearSolverKind::spectral_gmres;
    fem::MeshSpec ms{2, {1.0, 1.0}, 1.0 / 16, CornerLumping::incident_area};
    CHECK_THROWS_AS(fem::run_simulation(p, ms, fem::FlatFront{}, cfg, 1e-3, {}), ConfigError);
  }

  TEST_CASE("T must be a multiple of tau") {
    const auto p = front_params(0.1);
    fem::SolverConfig cfg;
    CHECK_THROWS_AS(fem::run_simulation(p, {1, {1.0, 1.0}, 1.0 / 16}, fem::FlatFront{}, cfg, 1.5e-3, {}),
                    ConfigError);
  }

  TEST_CASE("coarse meshes trigger the resolution warning") {
    CHECK_FALSE(fem::resolution_warning(1.0 / 8, 0.05).empty());
    CHECK(fem::resolution_warning(1.0 / 128, 0.05).empty());
  }
}
