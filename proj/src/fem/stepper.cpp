#include "activech/fem/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "activech/error.hpp"

namespace activech::fem {

void SolverConfig::validate() const {
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  if (!(newton_tol > 0.0)) throw ConfigError("newton_tol must be positive");
  if (!(linear_tol > 0.0)) throw ConfigError("linear_tol must be positive");
  if (newton_max < 1) throw ConfigError("newton_max must be at least 1");
}

namespace {

// Position of (row, col) in a compressed column-major matrix, -1 if absent.
Eigen::Index find_entry(const SparseMatrix& m, Eigen::Index row, Eigen::Index col) {
  const auto* outer = m.outerIndexPtr();
  const auto* inner = m.innerIndexPtr();
  const auto* first = inner + outer[col];
  const auto* last = inner + outer[col + 1];
  const auto* it = std::lower_bound(first, last, static_cast<int>(row));
  if (it == last || *it != row) return -1;
  return it - inner;
}

}  // namespace

struct TimeStepper::Impl {
  std::shared_ptr<const StructuredMesh> mesh;
  PhaseFieldParams params;
  SolverConfig cfg;
  Eigen::Index n = 0;
  Eigen::VectorXd w;
  double w_sum = 0.0;

  SparseMatrix stiff;      // A
  SparseMatrix stiff_mob;  // A_m, same pattern as A
  std::vector<Eigen::Index> elem_pos;  // element-local entry -> index into A values, -1 if dropped

  std::unique_ptr<LinearSolver> solver;

  void assemble_structure();
  void assemble_mobility(const Eigen::VectorXd& phi_old);
  double residual(const Eigen::VectorXd& phi, const Eigen::VectorXd& mu,
                  const Eigen::VectorXd& phi_old, const Eigen::VectorXd& source,
                  Eigen::VectorXd& r1, Eigen::VectorXd& r2) const;
};

void TimeStepper::Impl::assemble_structure() {
  const auto& m = *mesh;
  const int nv = m.nodes_per_element();
  const auto ne = m.element_count();

  // Entries of the local matrices that vanish identically (the diagonal
  // couplings of right triangles) are kept out of the pattern.
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(ne * nv * nv);
  std::vector<char> keep(ne * nv * nv, 0);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto nodes = m.element(e);
    const auto k = m.local_stiffness(e);
    double scale = 0.0;
    for (int a = 0; a < nv; ++a) scale = std::max(scale, std::abs(k[a * nv + a]));
    for (int a = 0; a < nv; ++a)
      for (int b = 0; b < nv; ++b) {
        const double v = k[a * nv + b];
        if (a != b && std::abs(v) <= 1e-13 * scale) continue;
        keep[e * nv * nv + a * nv + b] = 1;
        trip.emplace_back(nodes[a], nodes[b], v);
      }
  }
  stiff.resize(n, n);
  stiff.setFromTriplets(trip.begin(), trip.end());
  stiff.makeCompressed();
  stiff_mob = stiff;

  elem_pos.assign(ne * nv * nv, -1);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto nodes = m.element(e);
    for (int a = 0; a < nv; ++a)
      for (int b = 0; b < nv; ++b)
        if (keep[e * nv * nv + a * nv + b])
          elem_pos[e * nv * nv + a * nv + b] = find_entry(stiff, nodes[a], nodes[b]);
  }
}

void TimeStepper::Impl::assemble_mobility(const Eigen::VectorXd& phi_old) {
  const auto& m = *mesh;
  const int nv = m.nodes_per_element();
  double* av = stiff_mob.valuePtr();
  std::fill(av, av + stiff_mob.nonZeros(), 0.0);
  double mean = 0.0;
  for (std::size_t e = 0; e < m.element_count(); ++e) {
    const auto nodes = m.element(e);
    double mbar = 0.0;
    for (int a = 0; a < nv; ++a) mbar += model::mobility(params.mobility, phi_old[nodes[a]]);
    mbar /= nv;
    mean += mbar * m.element_volume(e);
    const auto k = m.local_stiffness(e);
    for (int ab = 0; ab < nv * nv; ++ab) {
      const auto pos = elem_pos[e * nv * nv + ab];
      if (pos >= 0) av[pos] += mbar * k[ab];
    }
  }
  solver->set_mobility(mean / m.domain_volume());
}

double TimeStepper::Impl::residual(const Eigen::VectorXd& phi, const Eigen::VectorXd& mu,
                                   const Eigen::VectorXd& phi_old, const Eigen::VectorXd& source,
                                   Eigen::VectorXd& r1, Eigen::VectorXd& r2) const {
  const double be = params.beta * params.epsilon;
  const double bie = params.beta / params.epsilon;
  const Eigen::VectorXd am_mu = stiff_mob * mu;
  const Eigen::VectorXd a_phi = stiff * phi;
  double norm = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    r1[i] = w[i] * (phi[i] - phi_old[i]) / cfg.tau + am_mu[i] - w[i] * source[i];
    r2[i] = be * a_phi[i] + bie * w[i] * params.potential.dpsi(phi[i]) - w[i] * mu[i];
    norm = std::max({norm, cfg.tau * std::abs(r1[i]) / w[i], std::abs(r2[i]) / w[i]});
  }
  return norm;
}

TimeStepper::TimeStepper(std::shared_ptr<const StructuredMesh> mesh, const PhaseFieldParams& params,
                         const SolverConfig& cfg)
    : impl_(std::make_unique<Impl>()) {
  if (!mesh) throw ConfigError("time stepper without mesh");
  params.validate();
  cfg.validate();
  impl_->mesh = std::move(mesh);
  impl_->params = params;
  impl_->cfg = cfg;
  impl_->n = static_cast<Eigen::Index>(impl_->mesh->node_count());
  const auto& lw = impl_->mesh->lumped_weights();
  impl_->w = Eigen::Map<const Eigen::VectorXd>(lw.data(), impl_->n);
  impl_->w_sum = impl_->w.sum();
  FrozenCoefficients frozen;
  frozen.tau = cfg.tau;
  frozen.beta = params.beta;
  frozen.epsilon = params.epsilon;
  frozen.curvature = std::max(params.potential.ddpsi_plus(), params.potential.ddpsi_minus());
  frozen.mobility = 0.5 * (params.mobility.m_plus + params.mobility.m_minus);
  impl_->solver = make_linear_solver(cfg.linear_solver, *impl_->mesh, frozen);
  impl_->assemble_structure();
}

TimeStepper::~TimeStepper() = default;
TimeStepper::TimeStepper(TimeStepper&&) noexcept = default;
TimeStepper& TimeStepper::operator=(TimeStepper&&) noexcept = default;

const SparseMatrix& TimeStepper::stiffness() const { return impl_->stiff; }
const SolverConfig& TimeStepper::config() const { return impl_->cfg; }
const PhaseFieldParams& TimeStepper::params() const { return impl_->params; }
std::string TimeStepper::linear_solver_name() const { return impl_->solver->name(); }

Eigen::VectorXd TimeStepper::chemical_potential(const Eigen::VectorXd& phi) const {
  const auto& p = impl_->params;
  Eigen::VectorXd mu = p.beta * p.epsilon * (impl_->stiff * phi);
  for (Eigen::Index i = 0; i < impl_->n; ++i)
    mu[i] = mu[i] / impl_->w[i] + p.beta / p.epsilon * p.potential.dpsi(phi[i]);
  return mu;
}

SimState TimeStepper::initial_state(NodalField phi) const {
  if (phi.mesh_ptr() != impl_->mesh) throw ConfigError("initial field lives on another mesh");
  if (!phi.all_finite()) throw NumericalError("initial field has non-finite values");
  SimState s;
  NodalField mu(impl_->mesh, chemical_potential(phi.values()));
  s.phi = std::move(phi);
  s.mu = std::move(mu);
  return s;
}

StepReport TimeStepper::advance(SimState& state) {
  Impl& d = *impl_;
  if (state.phi.mesh_ptr() != d.mesh || state.mu.mesh_ptr() != d.mesh)
    throw ConfigError("state lives on another mesh");

  const Eigen::VectorXd& phi_old = state.phi.values();
  Eigen::VectorXd source(d.n);
  const auto& p = d.params;
  for (Eigen::Index i = 0; i < d.n; ++i)
    source[i] = model::source_S(p.reaction, p.potential, p.epsilon, phi_old[i]);
  d.assemble_mobility(phi_old);

  Eigen::VectorXd phi = phi_old;
  Eigen::VectorXd mu = state.mu.values();
  Eigen::VectorXd r1(d.n), r2(d.n), curv(d.n), delta(d.n);
  ReducedSystem sys{&d.stiff, &d.stiff_mob, &d.w, &curv, d.cfg.tau, p.beta, p.epsilon};
  const double be = p.beta * p.epsilon;
  const double bie = p.beta / p.epsilon;

  StepReport rep;
  rep.step = state.step + 1;
  double norm = d.residual(phi, mu, phi_old, source, r1, r2);
  rep.residuals.push_back(norm);
  while (!(norm <= d.cfg.newton_tol)) {
    if (rep.newton_iterations >= d.cfg.newton_max || !std::isfinite(norm)) {
      std::ostringstream os;
      os << "Newton failed at step " << rep.step << " (t = " << state.t + d.cfg.tau
         << ") after " << rep.newton_iterations << " iterations; residuals:";
      for (double v : rep.residuals) os << ' ' << v;
      throw NumericalError(os.str());
    }
    for (Eigen::Index i = 0; i < d.n; ++i) curv[i] = p.potential.ddpsi(phi[i]);
    const Eigen::VectorXd r2w = r2.cwiseQuotient(d.w);
    const Eigen::VectorXd rhs = -r1 - d.stiff_mob * r2w;
    // Inexact Newton: the linear tolerance follows the nonlinear residual.
    const double forcing = std::max(d.cfg.linear_tol, std::min(1e-4, 1e-2 * norm));
    const double rel = d.solver->solve(sys, rhs, delta, forcing);
    rep.krylov_iterations += d.solver->last_iterations();
    rep.linear_residual = std::max(rep.linear_residual, rel);
    if (rel > forcing) {
      std::ostringstream os;
      os << "linear solve reached only relative residual " << rel << " at step " << rep.step;
      throw NumericalError(os.str());
    }
    // Constants lie in the kernel of A and A_m, so a uniform shift of delta
    // removes the mass error the linear solve leaves behind.
    delta.array() -= (r1.sum() + d.w.dot(delta) / d.cfg.tau) * d.cfg.tau / d.w_sum;
    // Back-substitute the chemical potential update from the second equation.
    const Eigen::VectorXd a_delta = d.stiff * delta;
    for (Eigen::Index i = 0; i < d.n; ++i) {
      mu[i] += be * a_delta[i] / d.w[i] + bie * curv[i] * delta[i] + r2w[i];
      phi[i] += delta[i];
    }
    ++rep.newton_iterations;
    norm = d.residual(phi, mu, phi_old, source, r1, r2);
    rep.residuals.push_back(norm);
  }

  double defect = 0.0;
  for (Eigen::Index i = 0; i < d.n; ++i)
    defect += d.w[i] * (phi[i] - phi_old[i]) - d.cfg.tau * d.w[i] * source[i];
  rep.mass_defect = std::abs(defect);

  state.phi.values() = std::move(phi);
  state.mu.values() = std::move(mu);
  state.step = rep.step;
  state.t = static_cast<double>(state.step) * d.cfg.tau;
  return rep;
}

SimState time_step(const SimState& state, const PhaseFieldParams& params, const SolverConfig& cfg) {
  TimeStepper stepper(state.phi.mesh_ptr(), params, cfg);
  SimState next = state;
  stepper.advance(next);
  return next;
}

}  // namespace activech::fem
