#include "activech/fem/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace activech::fem {

namespace {

using std::numbers::pi;

double profile(double d, double epsilon) { return std::tanh(d / (epsilon * std::numbers::sqrt2)); }

void check_disk_fits(const StructuredMesh& mesh, const std::array<double, 2>& c, double r) {
  if (!(r > 0.0)) throw ConfigError("disk radius must be positive");
  double room = std::min(c[0], mesh.length(0) - c[0]);
  if (mesh.dim() == 2) room = std::min({room, c[1], mesh.length(1) - c[1]});
  if (r > room + 1e-12) {
    std::ostringstream os;
    os << "disk of radius " << r << " at (" << c[0] << ", " << c[1]
       << ") does not fit in the domain";
    throw ConfigError(os.str());
  }
}

double radial_distance(const StructuredMesh& mesh, const std::array<double, 2>& x,
                       const std::array<double, 2>& c) {
  const double dx = x[0] - c[0];
  const double dy = mesh.dim() == 2 ? x[1] - c[1] : 0.0;
  return std::hypot(dx, dy);
}

}  // namespace

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::string init_kind_name(const InitSpec& spec) {
  static const char* names[] = {"flat_front",      "disk",     "perturbed_disk",
                                "random_spinodal", "constant", "three_disks"};
  return names[spec.index()];
}

std::vector<std::pair<int, double>> resolve_front_modes(const FlatFront& spec, double width_Lt) {
  std::vector<std::pair<int, double>> out = spec.modes;
  for (const auto& [k, a] : out)
    if (k < 0) throw ConfigError("flat_front mode index must be nonnegative");
  if (spec.random_modes <= 0) return out;
  if (!(spec.random_bound > 0.0))
    throw ConfigError("flat_front random perturbation needs a positive bound");

  std::mt19937_64 gen(spec.seed);
  std::vector<double> coef(static_cast<std::size_t>(spec.random_modes));
  for (auto& c : coef) c = 2.0 * uniform01(gen()) - 1.0;

  // Normalise the sup of the random height on a fine sample of [0, Lt].
  constexpr int kSamples = 4096;
  double sup = 0.0;
  for (int s = 0; s <= kSamples; ++s) {
    const double x = width_Lt * s / kSamples;
    double v = 0.0;
    for (std::size_t k = 0; k < coef.size(); ++k)
      v += coef[k] * std::cos(pi * static_cast<double>(k + 1) * x / width_Lt);
    sup = std::max(sup, std::abs(v));
  }
  const double scale = sup > 0.0 ? spec.random_bound / sup : 0.0;
  for (std::size_t k = 0; k < coef.size(); ++k)
    out.emplace_back(static_cast<int>(k + 1), coef[k] * scale);
  return out;
}

NodalField init_field(std::shared_ptr<const StructuredMesh> mesh, const InitSpec& spec,
                      double epsilon) {
  if (!mesh) throw ConfigError("init_field: no mesh");
  if (!(epsilon > 0.0)) throw ConfigError("init_field: epsilon must be positive");
  const StructuredMesh& m = *mesh;
  const auto n = static_cast<Eigen::Index>(m.node_count());
  Eigen::VectorXd v(n);

  if (const auto* f = std::get_if<FlatFront>(&spec)) {
    if (!(f->q0 > 0.0 && f->q0 < m.length(0))) throw ConfigError("flat_front q0 must lie in (0, L1)");
    std::vector<std::pair<int, double>> modes;
    if (!f->modes.empty() || f->random_modes > 0) {
      if (m.dim() != 2) throw ConfigError("flat_front perturbations need a 2D mesh");
      modes = resolve_front_modes(*f, m.length(1));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto x = m.coords(static_cast<std::size_t>(i));
      double height = f->q0;
      for (const auto& [k, a] : modes) height += a * std::cos(pi * k * x[1] / m.length(1));
      v[i] = profile(height - x[0], epsilon);
    }
  } else if (const auto* d = std::get_if<Disk>(&spec)) {
    check_disk_fits(m, d->center, d->r0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto x = m.coords(static_cast<std::size_t>(i));
      v[i] = profile(d->r0 - radial_distance(m, x, d->center), epsilon);
    }
  } else if (const auto* pd = std::get_if<PerturbedDisk>(&spec)) {
    if (m.dim() != 2) throw ConfigError("perturbed_disk needs a 2D mesh");
    if (!(pd->r0 > std::abs(pd->amplitude)))
      throw ConfigError("perturbed_disk amplitude must be smaller than r0");
    check_disk_fits(m, pd->center, pd->r0 + std::abs(pd->amplitude));
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto x = m.coords(static_cast<std::size_t>(i));
      const double theta = std::atan2(x[1] - pd->center[1], x[0] - pd->center[0]);
      const double r = pd->r0 + pd->amplitude * std::cos(pd->k * theta - pd->phase);
      v[i] = profile(r - radial_distance(m, x, pd->center), epsilon);
    }
  } else if (const auto* rs = std::get_if<RandomSpinodal>(&spec)) {
    if (!(rs->bound > 0.0)) throw ConfigError("random_spinodal bound must be positive");
    std::mt19937_64 gen(rs->seed);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = rs->bound * (2.0 * uniform01(gen()) - 1.0);
    v.array() -= lumped_integral(m, v) / m.domain_volume();
  } else if (const auto* c = std::get_if<Constant>(&spec)) {
    v.setConstant(c->c);
  } else if (const auto* td = std::get_if<ThreeDisks>(&spec)) {
    for (int k = 0; k < 3; ++k) check_disk_fits(m, td->centers[k], td->radii[k]);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto x = m.coords(static_cast<std::size_t>(i));
      double dist = -1e300;
      for (int k = 0; k < 3; ++k)
        dist = std::max(dist, td->radii[k] - radial_distance(m, x, td->centers[k]));
      v[i] = profile(dist, epsilon);
    }
  }
  return {std::move(mesh), std::move(v)};
}

}  // namespace activech::fem
