#include "activech/fem/mesh.hpp"

#include <cmath>
#include <sstream>

#include "activech/error.hpp"

namespace activech::fem {

namespace {

int cells_for(double length, double h) {
  const double ratio = length / h;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(n * h - length) > 1e-12 * std::max(1.0, length)) {
    std::ostringstream os;
    os << "mesh size h = " << h << " does not divide length " << length;
    throw ConfigError(os.str());
  }
  return static_cast<int>(n);
}

// P1 stiffness of triangle (p0, p1, p2), row-major into out[9].
void triangle_stiffness(const std::array<double, 2>& p0, const std::array<double, 2>& p1,
                        const std::array<double, 2>& p2, double* out, double& area) {
  const std::array<std::array<double, 2>, 3> p{p0, p1, p2};
  const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
  area = 0.5 * std::abs(det);
  // grad phi_a = (y_b - y_c, x_c - x_b) / det for (a, b, c) cyclic.
  std::array<std::array<double, 2>, 3> g{};
  for (int a = 0; a < 3; ++a) {
    const auto& pb = p[(a + 1) % 3];
    const auto& pc = p[(a + 2) % 3];
    g[a] = {(pb[1] - pc[1]) / det, (pc[0] - pb[0]) / det};
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out[a * 3 + b] = area * (g[a][0] * g[b][0] + g[a][1] * g[b][1]);
}

}  // namespace

StructuredMesh StructuredMesh::build(int dim, std::array<double, 2> lengths, double h,
                                     CornerLumping corners) {
  if (dim != 1 && dim != 2) throw ConfigError("mesh dimension must be 1 or 2");
  if (!(h > 0.0)) throw ConfigError("mesh size h must be positive");
  for (int d = 0; d < dim; ++d)
    if (!(lengths[d] > 0.0)) throw ConfigError("domain lengths must be positive");

  StructuredMesh m;
  m.dim_ = dim;
  m.corners_ = corners;
  m.lengths_ = lengths;
  if (dim == 1) m.lengths_[1] = 1.0;
  for (int d = 0; d < dim; ++d) {
    m.cells_[d] = cells_for(lengths[d], h);
    m.spacing_[d] = lengths[d] / m.cells_[d];
  }

  const int n1 = m.cells_[0];
  if (dim == 1) {
    const double hx = m.spacing_[0];
    m.weights_.assign(static_cast<std::size_t>(n1) + 1, 0.0);
    for (int e = 0; e < n1; ++e) {
      m.connectivity_.insert(m.connectivity_.end(), {e, e + 1});
      m.volumes_.push_back(hx);
      m.stiffness_.insert(m.stiffness_.end(), {1.0 / hx, -1.0 / hx, -1.0 / hx, 1.0 / hx});
      m.weights_[e] += 0.5 * hx;
      m.weights_[e + 1] += 0.5 * hx;
    }
    return m;
  }

  const int n2 = m.cells_[1];
  m.weights_.assign(static_cast<std::size_t>(n1 + 1) * (n2 + 1), 0.0);
  m.connectivity_.reserve(static_cast<std::size_t>(6) * n1 * n2);
  double local[9];
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i < n1; ++i) {
      const int n00 = static_cast<int>(m.node_index(i, j));
      const int n10 = static_cast<int>(m.node_index(i + 1, j));
      const int n11 = static_cast<int>(m.node_index(i + 1, j + 1));
      const int n01 = static_cast<int>(m.node_index(i, j + 1));
      for (const auto& tri : {std::array<int, 3>{n00, n10, n11}, std::array<int, 3>{n00, n11, n01}}) {
        double area = 0.0;
        triangle_stiffness(m.coords(tri[0]), m.coords(tri[1]), m.coords(tri[2]), local, area);
        m.connectivity_.insert(m.connectivity_.end(), tri.begin(), tri.end());
        m.volumes_.push_back(area);
        m.stiffness_.insert(m.stiffness_.end(), local, local + 9);
        for (int v : tri) m.weights_[v] += area / 3.0;
      }
    }
  }
  if (corners == CornerLumping::tensor) {
    const double corner = 0.25 * m.spacing_[0] * m.spacing_[1];
    for (auto [i, j] : {std::pair{0, 0}, std::pair{n1, 0}, std::pair{0, n2}, std::pair{n1, n2}})
      m.weights_[m.node_index(i, j)] = corner;
  }
  return m;
}

std::array<double, 2> StructuredMesh::coords(std::size_t node) const {
  const auto nx = static_cast<std::size_t>(nodes_along(0));
  const auto i = node % nx;
  const auto j = node / nx;
  return {static_cast<double>(i) * spacing_[0],
          dim_ == 2 ? static_cast<double>(j) * spacing_[1] : 0.0};
}

double StructuredMesh::domain_volume() const {
  return dim_ == 1 ? lengths_[0] : lengths_[0] * lengths_[1];
}

}  // namespace activech::fem
