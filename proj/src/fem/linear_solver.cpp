#include "activech/fem/linear_solver.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include <fftw3.h>

#include <Eigen/SparseLU>

#include "activech/error.hpp"

namespace activech::fem {

namespace {

double relative_residual(const SparseMatrix& a, const Eigen::VectorXd& b, const Eigen::VectorXd& x) {
  const double bn = b.norm();
  return bn == 0.0 ? (a * x).norm() : (b - a * x).norm() / bn;
}

}  // namespace

Eigen::VectorXd ReducedSystem::apply(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd ax = *stiffness * x;
  const double be = beta * epsilon, bie = beta / epsilon;
  const Eigen::VectorXd inner =
      (be * ax.array() / weights->array() + bie * curvature->array() * x.array()).matrix();
  Eigen::VectorXd y = *mob_stiffness * inner;
  y.array() += weights->array() * x.array() / tau;
  return y;
}

SparseMatrix ReducedSystem::assemble() const {
  const double be = beta * epsilon, bie = beta / epsilon;
  const Eigen::VectorXd inv_w = weights->cwiseInverse();
  SparseMatrix inner = (be * inv_w).asDiagonal() * *stiffness;
  SparseMatrix diag((*weights).size(), (*weights).size());
  diag.setIdentity();
  inner += (bie * *curvature).asDiagonal() * diag;
  SparseMatrix s = *mob_stiffness * inner;
  s += (*weights / tau).asDiagonal() * diag;
  s.makeCompressed();
  return s;
}

namespace {

class DirectSolver final : public LinearSolver {
 public:
  double solve(const ReducedSystem& sys, const Eigen::VectorXd& b, Eigen::VectorXd& x,
               double rel_tol) override {
    const SparseMatrix a = sys.assemble();
    lu_.compute(a);
    if (lu_.info() != Eigen::Success) throw NumericalError("sparse LU: factorization failed");
    x = lu_.solve(b);
    double rel = relative_residual(a, b, x);
    for (int k = 0; k < 3 && rel > rel_tol; ++k) {
      x += lu_.solve(Eigen::VectorXd(b - a * x));
      rel = relative_residual(a, b, x);
    }
    if (!std::isfinite(rel)) throw NumericalError("sparse LU: non-finite solution");
    return rel;
  }
  std::string name() const override { return "sparse-lu"; }

 private:
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
};

// FFTW's planner is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

/// Unnormalised DCT-I (FFTW REDFT00) over the node lattice.
class CosineTransform {
 public:
  CosineTransform(int nx, int ny) : size_(static_cast<std::size_t>(nx) * ny) {
    in_ = fftw_alloc_real(size_);
    out_ = fftw_alloc_real(size_);
    std::lock_guard lock(planner_mutex());
    plan_ = ny > 1 ? fftw_plan_r2r_2d(ny, nx, in_, out_, FFTW_REDFT00, FFTW_REDFT00, FFTW_ESTIMATE)
                   : fftw_plan_r2r_1d(nx, in_, out_, FFTW_REDFT00, FFTW_ESTIMATE);
    if (!plan_) throw NumericalError("cosine transform: planning failed");
  }
  ~CosineTransform() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  CosineTransform(const CosineTransform&) = delete;
  CosineTransform& operator=(const CosineTransform&) = delete;

  double* input() { return in_; }
  const double* output() const { return out_; }
  void run() { fftw_execute(plan_); }

 private:
  std::size_t size_;
  double* in_ = nullptr;
  double* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

/// Exact inverse of the frozen reduced matrix. With tensor lumping M^-1 A
/// is the Neumann 5-point (3-point in 1D) Laplacian, whose eigenvectors are
/// products of cos(pi k i / N); two DCT-I passes diagonalise it (the
/// end-point factors of the transform cancel between the passes).
struct SpectralData {
  SpectralData(const StructuredMesh& mesh, const FrozenCoefficients& c)
      : coef(c),
        nx(mesh.nodes_along(0)),
        ny(mesh.nodes_along(1)),
        w(mesh.lumped_weights()),
        transform(nx, ny) {
    const auto axis = [&](int d, int nodes) {
      std::vector<double> lam(static_cast<std::size_t>(nodes), 0.0);
      const int n = nodes - 1;
      for (int k = 1; k <= n; ++k) {
        const double s = std::sin(0.5 * std::numbers::pi * k / n) / mesh.spacing(d);
        lam[k] = 4.0 * s * s;
      }
      return lam;
    };
    const auto lx = axis(0, nx);
    const auto ly = axis(1, ny);
    lambda.resize(w.size());
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) lambda[static_cast<std::size_t>(j) * nx + i] = lx[i] + ly[j];
    scale = 1.0 / (2.0 * (nx - 1));
    if (ny > 1) scale /= 2.0 * (ny - 1);
  }

  /// y = S0^-1 r with S0 = M p(M^-1 A), p(l) = 1/tau + m l (beta eps l + (beta/eps) c).
  void apply(const Eigen::VectorXd& r, Eigen::VectorXd& y) {
    const std::size_t n = w.size();
    double* in = transform.input();
    const double* out = transform.output();
    for (std::size_t i = 0; i < n; ++i) in[i] = r[static_cast<Eigen::Index>(i)] / w[i];
    transform.run();
    const double be = coef.beta * coef.epsilon;
    const double bc = coef.beta / coef.epsilon * coef.curvature;
    for (std::size_t i = 0; i < n; ++i) {
      const double lam = lambda[i];
      const double p = 1.0 / coef.tau + coef.mobility * lam * (be * lam + bc);
      in[i] = out[i] * scale / p;
    }
    transform.run();
    y.resize(r.size());
    for (std::size_t i = 0; i < n; ++i) y[static_cast<Eigen::Index>(i)] = out[i];
  }

  FrozenCoefficients coef;
  int nx, ny;
  std::vector<double> w, lambda;
  double scale = 1.0;
  CosineTransform transform;
};

/// Restarted GMRES, right-preconditioned so the residual it minimises is
/// the true one; classical Gram-Schmidt with one reorthogonalisation pass.
class SpectralGmres final : public LinearSolver {
 public:
  SpectralGmres(const StructuredMesh& mesh, const FrozenCoefficients& coef)
      : data_(std::make_unique<SpectralData>(mesh, coef)) {}

  void set_mobility(double mean) override { data_->coef.mobility = mean; }

  double solve(const ReducedSystem& sys, const Eigen::VectorXd& b, Eigen::VectorXd& x,
               double rel_tol) override {
    iterations_ = 0;
    const double bn = b.norm();
    x.setZero(b.size());
    if (bn == 0.0) return 0.0;
    const Eigen::Index n = b.size();
    basis_.resize(n, kRestart + 1);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(kRestart + 1, kRestart);
    Eigen::VectorXd cs(kRestart), sn(kRestart), g(kRestart + 1), z(n), w(n), h(kRestart + 1);
    Eigen::VectorXd r = b;
    double rn = bn;
    while (iterations_ < kMaxIterations) {
      basis_.col(0) = r / rn;
      g.setZero();
      g[0] = rn;
      int k = 0;
      while (k < kRestart && iterations_ < kMaxIterations) {
        ++iterations_;
        data_->apply(basis_.col(k), z);
        w = sys.apply(z);
        auto v = basis_.leftCols(k + 1);
        h.head(k + 1).noalias() = v.transpose() * w;
        w.noalias() -= v * h.head(k + 1);
        const Eigen::VectorXd h2 = v.transpose() * w;
        w.noalias() -= v * h2;
        hess.col(k).head(k + 1) = h.head(k + 1) + h2;
        hess(k + 1, k) = w.norm();
        if (hess(k + 1, k) > 0.0) basis_.col(k + 1) = w / hess(k + 1, k);
        for (int i = 0; i < k; ++i) {
          const double t = cs[i] * hess(i, k) + sn[i] * hess(i + 1, k);
          hess(i + 1, k) = -sn[i] * hess(i, k) + cs[i] * hess(i + 1, k);
          hess(i, k) = t;
        }
        const double rr = std::hypot(hess(k, k), hess(k + 1, k));
        cs[k] = rr == 0.0 ? 1.0 : hess(k, k) / rr;
        sn[k] = rr == 0.0 ? 0.0 : hess(k + 1, k) / rr;
        hess(k, k) = rr;
        hess(k + 1, k) = 0.0;
        g[k + 1] = -sn[k] * g[k];
        g[k] = cs[k] * g[k];
        ++k;
        if (std::abs(g[k]) <= 0.5 * rel_tol * bn) break;
      }
      const Eigen::VectorXd y =
          hess.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
      const Eigen::VectorXd vy = basis_.leftCols(k) * y;
      data_->apply(vy, z);
      x += z;
      r = b - sys.apply(x);
      rn = r.norm();
      if (!std::isfinite(rn)) break;
      if (rn <= rel_tol * bn) return rn / bn;
    }
    // Stalled: settle this system directly.
    ++fallbacks_;
    return direct_.solve(sys, b, x, rel_tol);
  }
  std::string name() const override { return "spectral-gmres"; }
  int last_iterations() const override { return iterations_; }
  int fallbacks() const override { return fallbacks_; }

 private:
  static constexpr int kRestart = 60;
  static constexpr int kMaxIterations = 1000;
  std::unique_ptr<SpectralData> data_;
  Eigen::MatrixXd basis_;
  DirectSolver direct_;
  int iterations_ = 0;
  int fallbacks_ = 0;
};

}  // namespace

std::unique_ptr<LinearSolver> make_direct_solver() { return std::make_unique<DirectSolver>(); }

std::unique_ptr<LinearSolver> make_spectral_solver(const StructuredMesh& mesh,
                                                   const FrozenCoefficients& coef) {
  if (mesh.dim() == 2 && mesh.corner_lumping() != CornerLumping::tensor)
    throw ConfigError("the spectral solver needs tensor corner lumping");
  return std::make_unique<SpectralGmres>(mesh, coef);
}

std::unique_ptr<LinearSolver> make_linear_solver(LinearSolverKind kind, const StructuredMesh& mesh,
                                                 const FrozenCoefficients& coef) {
  switch (kind) {
    case LinearSolverKind::direct:
      return make_direct_solver();
    case LinearSolverKind::spectral_gmres:
      return make_spectral_solver(mesh, coef);
    case LinearSolverKind::automatic:
      break;
  }
  if (mesh.dim() == 2 && mesh.corner_lumping() == CornerLumping::tensor)
    return make_spectral_solver(mesh, coef);
  return make_direct_solver();
}

}  // namespace activech::fem
