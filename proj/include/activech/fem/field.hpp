#pragma once

#include <memory>
#include <utility>

#include <Eigen/Core>

#include "activech/error.hpp"
#include "activech/fem/mesh.hpp"

namespace activech::fem {

/// Nodal values of a P1 function on a shared mesh.
class NodalField {
 public:
  NodalField() = default;
  NodalField(std::shared_ptr<const StructuredMesh> mesh, Eigen::VectorXd values)
      : mesh_(std::move(mesh)), values_(std::move(values)) {
    if (!mesh_) throw ConfigError("nodal field without mesh");
    if (static_cast<std::size_t>(values_.size()) != mesh_->node_count())
      throw ConfigError("nodal field length does not match the mesh node count");
  }
  static NodalField zeros(std::shared_ptr<const StructuredMesh> mesh) {
    const auto n = static_cast<Eigen::Index>(mesh->node_count());
    return {std::move(mesh), Eigen::VectorXd::Zero(n)};
  }

  const StructuredMesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const StructuredMesh>& mesh_ptr() const { return mesh_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }
  double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  bool all_finite() const { return values_.allFinite(); }

 private:
  std::shared_ptr<const StructuredMesh> mesh_;
  Eigen::VectorXd values_;
};

struct SimState {
  NodalField phi;
  NodalField mu;
  double t = 0.0;
  long step = 0;
};

/// Lumped integral (f, 1)^h.
inline double lumped_integral(const StructuredMesh& mesh, const Eigen::VectorXd& f) {
  const auto& w = mesh.lumped_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f[static_cast<Eigen::Index>(i)];
  return s;
}

}  // namespace activech::fem
