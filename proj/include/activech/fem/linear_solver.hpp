#pragma once

#include <memory>
#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "activech/fem/mesh.hpp"

namespace activech::fem {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class LinearSolverKind {
  automatic,       ///< spectral GMRES on 2D tensor-lumped meshes, direct otherwise
  direct,          ///< sparse LU of the assembled reduced matrix
  spectral_gmres,  ///< GMRES preconditioned by the constant-coefficient reduced matrix
};

/// Newton matrix of the scheme with mu eliminated (the lumped mass is
/// diagonal, so this is exact):
///   S = M / tau + A_m M^-1 (beta eps A + (beta / eps) M diag(d)),
/// d = psi''(phi) at the current iterate.
struct ReducedSystem {
  const SparseMatrix* stiffness = nullptr;      ///< A
  const SparseMatrix* mob_stiffness = nullptr;  ///< A_m
  const Eigen::VectorXd* weights = nullptr;     ///< lumped masses
  const Eigen::VectorXd* curvature = nullptr;   ///< d
  double tau = 1e-3;
  double beta = 1.0;
  double epsilon = 0.1;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  SparseMatrix assemble() const;
};

/// Constants of the frozen reduced matrix (d -> curvature, A_m -> mobility A)
/// the spectral preconditioner inverts.
struct FrozenCoefficients {
  double tau = 1e-3;
  double beta = 1.0;
  double epsilon = 0.1;
  double curvature = 2.0;
  double mobility = 1.0;
};

class LinearSolver {
 public:
  virtual ~LinearSolver() = default;
  /// Called once per step with the mean mobility of the lagged state.
  virtual void set_mobility(double /*mean*/) {}
  /// Solve S x = b to relative residual rel_tol; returns the achieved one.
  /// Throws NumericalError on breakdown.
  virtual double solve(const ReducedSystem& s, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                       double rel_tol) = 0;
  virtual std::string name() const = 0;
  /// Krylov iterations of the last solve (0 for direct solves).
  virtual int last_iterations() const { return 0; }
  /// Solves that GMRES handed to the direct fallback.
  virtual int fallbacks() const { return 0; }
};

std::unique_ptr<LinearSolver> make_direct_solver();

/// Restarted GMRES, right-preconditioned by the frozen reduced matrix,
/// which a cosine transform diagonalises exactly when the lumping is
/// tensor-product. Falls back to a direct solve when GMRES stalls.
std::unique_ptr<LinearSolver> make_spectral_solver(const StructuredMesh& mesh,
                                                   const FrozenCoefficients& coef);

std::unique_ptr<LinearSolver> make_linear_solver(LinearSolverKind kind, const StructuredMesh& mesh,
                                                 const FrozenCoefficients& coef);

}  // namespace activech::fem
