#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace activech::fem {

/// How the four corner nodes of a 2D lattice are lumped.
///
/// With every square split along the same diagonal, two opposite corners
/// touch two triangles and the other two touch one, so incident-area
/// lumping gives them h1 h2 / 3 and h1 h2 / 6. `tensor` assigns h1 h2 / 4
/// to all four corners instead (the weights of every other node are
/// identical under both rules), which keeps the discrete operator
/// reflection-symmetric and makes x2-independent data evolve exactly like
/// the 1D problem.
enum class CornerLumping { tensor, incident_area };

/// Uniform simplicial mesh of (0, L1) or (0, L1) x (0, L2).
///
/// Nodes are numbered lexicographically, node (i, j) -> i + j (n1 + 1).
/// Each lattice square is split into two triangles along the diagonal from
/// its lower-left to its upper-right corner.
class StructuredMesh {
 public:
  static StructuredMesh build(int dim, std::array<double, 2> lengths, double h,
                              CornerLumping corners = CornerLumping::tensor);

  int dim() const { return dim_; }
  double length(int d) const { return lengths_[d]; }
  int cells(int d) const { return cells_[d]; }
  double spacing(int d) const { return spacing_[d]; }
  /// Number of lattice nodes along dimension d (1 for the unused axis in 1D).
  int nodes_along(int d) const { return d < dim_ ? cells_[d] + 1 : 1; }

  std::size_t node_count() const { return weights_.size(); }
  std::size_t node_index(int i, int j = 0) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * nodes_along(0);
  }
  std::array<double, 2> coords(std::size_t node) const;

  int nodes_per_element() const { return dim_ + 1; }
  std::size_t element_count() const { return volumes_.size(); }
  std::span<const int> element(std::size_t e) const {
    return {connectivity_.data() + e * nodes_per_element(),
            static_cast<std::size_t>(nodes_per_element())};
  }
  double element_volume(std::size_t e) const { return volumes_[e]; }
  /// Row-major local stiffness int grad phi_a . grad phi_b over element e.
  std::span<const double> local_stiffness(std::size_t e) const {
    const auto nv = static_cast<std::size_t>(nodes_per_element());
    return {stiffness_.data() + e * nv * nv, nv * nv};
  }

  const std::vector<double>& lumped_weights() const { return weights_; }
  double domain_volume() const;
  CornerLumping corner_lumping() const { return corners_; }

 private:
  int dim_ = 1;
  std::array<double, 2> lengths_{1.0, 1.0};
  std::array<int, 2> cells_{1, 0};
  std::array<double, 2> spacing_{1.0, 1.0};
  CornerLumping corners_ = CornerLumping::tensor;
  std::vector<int> connectivity_;
  std::vector<double> volumes_;
  std::vector<double> stiffness_;
  std::vector<double> weights_;
};

}  // namespace activech::fem
