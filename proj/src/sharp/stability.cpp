#include "activech/sharp/stability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "activech/error.hpp"

namespace activech::sharp {

ModeIndex ModeIndex::from_vector(std::vector<int> l) {
  ModeIndex m;
  for (int v : l) {
    if (v < 0) throw DomainError("mode indices must be nonnegative");
    m.l_sq += v * v;
  }
  m.l_vec = std::move(l);
  return m;
}

StabilityRow amplification(const SharpParams& sp, double beta, double q, const ModeIndex& mode) {
  sp.require_planar();
  const double L = sp.length_L;
  if (!(q > 0.0 && q < L)) throw ConfigError("amplification: q must lie in (0, L)");
  if (!(beta > 0.0)) throw ConfigError("amplification: beta must be positive");

  using std::numbers::pi;
  // Transverse eigenvalue magnitude pi^2 |l|^2 / Lt^2; the Laplacian eigenvalue is its negative.
  const double kappa2 = pi * pi * mode.l_sq / (sp.width_Lt * sp.width_Lt);
  const double lp = *sp.lambda_plus, lm = *sp.lambda_minus;
  const double dp = *sp.d_plus, dm = *sp.d_minus;
  const double tension = 0.5 * sp.gamma * beta * kappa2;

  StabilityRow row;
  row.mode = mode;
  row.gamma_plus = std::sqrt(lp * lp + kappa2);
  row.gamma_minus = std::sqrt(lm * lm + kappa2);
  const double num_plus = dp * lp * std::tanh(lp * q) + tension;
  const double num_minus = -(dm * lm * std::tanh(lm * (L - q)) - tension);
  row.a_plus = num_plus / std::cosh(row.gamma_plus * q);
  row.a_minus = num_minus / std::cosh(row.gamma_minus * (L - q));
  // a cosh-normalised, so a * sinh is evaluated as num * tanh (no overflow for large |l|).
  row.factor = sp.s_plus - sp.s_minus -
               sp.m_plus * num_plus * row.gamma_plus * std::tanh(row.gamma_plus * q) -
               sp.m_minus * num_minus * row.gamma_minus * std::tanh(row.gamma_minus * (L - q));
  if (mode.l_sq > 0 && is_normalized_setting(sp, q)) {
    row.beta_crit = beta_crit(L, sp.width_Lt, sp.gamma, mode);
  }
  return row;
}

double beta_crit(double length_L, double width_Lt, double gamma, const ModeIndex& mode) {
  if (mode.l_sq <= 0) throw DomainError("beta_crit is undefined for the translational mode");
  using std::numbers::pi;
  const double k2 = mode.l_sq * pi * pi / (width_Lt * width_Lt);
  const double g = std::sqrt(1.0 + k2);
  return 2.0 / gamma / k2 *
         (std::tanh(0.5 * length_L) - 1.0 / (g * std::tanh(0.5 * length_L * g)));
}

double amplification_normalized(double length_L, double width_Lt, double gamma, double beta,
                                const ModeIndex& mode) {
  using std::numbers::pi;
  const double k2 = mode.l_sq * pi * pi / (width_Lt * width_Lt);
  const double g = std::sqrt(1.0 + k2);
  return -2.0 + g * std::tanh(0.5 * length_L * g) *
                    (2.0 * std::tanh(0.5 * length_L) - gamma * beta * k2);
}

bool is_normalized_setting(const SharpParams& sp, double q, double tol) {
  auto near = [tol](double a, double b) { return std::abs(a - b) <= tol; };
  return near(sp.s_plus, -1.0) && near(sp.s_minus, 1.0) && near(sp.m_plus, 1.0) &&
         near(sp.m_minus, 1.0) && near(sp.rho_plus, 1.0) && near(sp.rho_minus, 1.0) &&
         near(q, 0.5 * sp.length_L);
}

std::optional<double> critical_beta(const SharpParams& sp, double q, const ModeIndex& mode,
                                    double beta_max) {
  auto f = [&](double b) { return amplification(sp, b, q, mode).factor; };
  double lo = 1e-300, hi = beta_max;
  double flo = f(lo);
  const double fhi = f(hi);
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ModeEnumeration enumerate_modes(int dim, int max_lsq) {
  if (dim != 2 && dim != 3) throw DomainError("enumerate_modes: dimension must be 2 or 3");
  if (max_lsq < 0) throw DomainError("enumerate_modes: max |l|^2 must be nonnegative");
  ModeEnumeration out;
  const int lmax = static_cast<int>(std::floor(std::sqrt(static_cast<double>(max_lsq)))) + 1;
  if (dim == 2) {
    for (int a = 0; a * a <= max_lsq; ++a) out.all.push_back(ModeIndex::from_vector({a}));
  } else {
    for (int a = 0; a <= lmax; ++a)
      for (int b = 0; b <= lmax; ++b)
        if (a * a + b * b <= max_lsq) out.all.push_back(ModeIndex::from_vector({a, b}));
  }
  std::stable_sort(out.all.begin(), out.all.end(),
                   [](const ModeIndex& x, const ModeIndex& y) { return x.l_sq < y.l_sq; });
  std::map<int, const ModeIndex*> seen;
  for (const auto& m : out.all) seen.emplace(m.l_sq, &m);
  for (const auto& [lsq, m] : seen) out.representatives.push_back(*m);
  return out;
}

}  // namespace activech::sharp
