#include "activech/sharp/planar.hpp"

#include <cmath>
#include <sstream>

#include "activech/error.hpp"

namespace activech::sharp {

void PlanarConfig::validate() const {
  sharp.require_planar();
  if (!(q0 > 0.0 && q0 < sharp.length_L)) throw ConfigError("q0 must lie in (0, L)");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");
  if (output_stride < 1) throw ConfigError("output stride must be at least 1");
}

double mu_planar(const SharpParams& sp, Side side, double q, double z) {
  sp.require_planar();
  const double L = sp.length_L;
  if (side == Side::plus) {
    if (!(z >= 0.0 && z <= q)) throw DomainError("mu_planar(+): z must lie in [0, q]");
    const double lam = *sp.lambda_plus;
    return *sp.d_plus * (1.0 - std::cosh(lam * z) / std::cosh(lam * q));
  }
  if (!(z >= q && z <= L)) throw DomainError("mu_planar(-): z must lie in [q, L]");
  const double lam = *sp.lambda_minus;
  return *sp.d_minus * (1.0 - std::cosh(lam * (L - z)) / std::cosh(lam * (L - q)));
}

double velocity_H(const SharpParams& sp, double q) {
  sp.require_planar();
  const double L = sp.length_L;
  if (!(q > 0.0 && q < L)) {
    std::ostringstream os;
    os << "velocity_H: q = " << q << " outside (0, " << L << ")";
    throw DomainError(os.str());
  }
  const double lp = *sp.lambda_plus, lm = *sp.lambda_minus;
  return 0.5 * (*sp.d_plus * sp.m_plus * lp * std::tanh(lp * q) +
                *sp.d_minus * sp.m_minus * lm * std::tanh(lm * (L - q)) + sp.s_interface);
}

std::optional<double> find_stationary(const SharpParams& sp) {
  sp.require_planar();
  const double L = sp.length_L;
  double a = 1e-12 * L;
  double b = L - a;
  double ha = velocity_H(sp, a);
  const double hb = velocity_H(sp, b);
  if (ha == 0.0) return a;
  if (hb == 0.0) return b;
  if ((ha > 0.0) == (hb > 0.0)) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    const double hm = velocity_H(sp, m);
    if (std::abs(hm) < 1e-12 || m == a || m == b) return m;
    if ((hm > 0.0) == (ha > 0.0)) {
      a = m;
      ha = hm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

Trajectory integrate_q(const PlanarConfig& cfg) {
  cfg.validate();
  const auto& sp = cfg.sharp;
  const double L = sp.length_L;
  auto inside = [L](double q) { return q > 0.0 && q < L; };

  Trajectory traj;
  double t = 0.0;
  double q = cfg.q0;
  traj.points.push_back({t, q, velocity_H(sp, q)});

  const double steps_real = cfg.t_end / cfg.dt;
  auto nsteps = static_cast<long long>(std::floor(steps_real + 1e-9));
  const double remainder = cfg.t_end - static_cast<double>(nsteps) * cfg.dt;
  const bool extra = remainder > 1e-12 * cfg.dt;

  auto rk4 = [&](double qn, double h) -> std::optional<double> {
    const double k1 = velocity_H(sp, qn);
    if (!inside(qn + 0.5 * h * k1)) return std::nullopt;
    const double k2 = velocity_H(sp, qn + 0.5 * h * k1);
    if (!inside(qn + 0.5 * h * k2)) return std::nullopt;
    const double k3 = velocity_H(sp, qn + 0.5 * h * k2);
    if (!inside(qn + h * k3)) return std::nullopt;
    const double k4 = velocity_H(sp, qn + h * k3);
    const double next = qn + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!inside(next)) return std::nullopt;
    return next;
  };

  const long long total = nsteps + (extra ? 1 : 0);
  for (long long n = 1; n <= total; ++n) {
    const bool last = n == total;
    const double h = (extra && last) ? remainder : cfg.dt;
    const auto next = rk4(q, h);
    if (!next) {
      traj.boundary_hit = true;
      break;
    }
    q = *next;
    t = (extra && last) ? cfg.t_end : static_cast<double>(n) * cfg.dt;
    if (n % cfg.output_stride == 0 || last) traj.points.push_back({t, q, velocity_H(sp, q)});
  }
  return traj;
}

}  // namespace activech::sharp
