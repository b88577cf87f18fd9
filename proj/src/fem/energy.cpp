#include "activech/fem/energy.hpp"

namespace activech::fem {

double free_energy(const NodalField& phi, const model::PhaseFieldParams& params) {
  const auto& m = phi.mesh();
  const auto& v = phi.values();
  const int nv = m.nodes_per_element();
  double grad = 0.0;
  for (std::size_t e = 0; e < m.element_count(); ++e) {
    const auto nodes = m.element(e);
    const auto k = m.local_stiffness(e);
    for (int a = 0; a < nv; ++a)
      for (int b = 0; b < nv; ++b) grad += v[nodes[a]] * k[a * nv + b] * v[nodes[b]];
  }
  const auto& w = m.lumped_weights();
  double bulk = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    bulk += w[i] * params.potential.psi(v[static_cast<Eigen::Index>(i)]);
  return params.beta * (0.5 * params.epsilon * grad + bulk / params.epsilon);
}

double total_mass(const NodalField& phi) { return lumped_integral(phi.mesh(), phi.values()); }

}  // namespace activech::fem
