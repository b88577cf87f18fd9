#include "activech/model/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "activech/error.hpp"

namespace activech::model {

namespace {

struct SimpsonPanel {
  double a, m, b;
  double fa, fm, fb;
  double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const SimpsonPanel& p, double tol,
              int depth, int min_depth, int max_depth) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
  const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (depth >= max_depth || (depth >= min_depth && std::abs(delta) <= 15.0 * tol)) {
    return left + right + delta / 15.0;
  }
  return refine(f, {p.a, lm, p.m, p.fa, flm, p.fm, left}, 0.5 * tol, depth + 1, min_depth,
                max_depth) +
         refine(f, {p.m, rm, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth + 1, min_depth,
                max_depth);
}

// Slope field of the equipartition reduction, signed so that +-1 attract.
double profile_slope(const DoubleWellPotential& pot, double phi) {
  const double s = std::sqrt(std::max(0.0, 2.0 * pot.psi(phi)));
  return std::abs(phi) < 1.0 ? s : -std::copysign(s, phi);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int min_depth, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return refine(f, {a, m, b, fa, fm, fb, simpson(a, b, fa, fm, fb)}, abs_tol, 0, min_depth,
                max_depth);
}

double gamma_quadrature(const DoubleWellPotential& pot) {
  return adaptive_simpson(
      [&pot](double s) { return std::sqrt(std::max(0.0, 2.0 * pot.psi(s))); }, -1.0, 1.0,
      1e-10);
}

InterfaceProfile::InterfaceProfile(const DoubleWellPotential& pot, double half_width,
                                   double spacing)
    : pot_(pot), half_width_(half_width), spacing_(spacing) {
  if (pot_.kind() == PotentialKind::quartic) return;

  namespace odeint = boost::numeric::odeint;
  const auto n = static_cast<std::size_t>(std::ceil(half_width_ / spacing_)) + 2;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i) * spacing_;
  values_.reserve(n);

  double phi = 0.0;
  auto rhs = [this](const double& y, double& dydz, double) { dydz = profile_slope(pot_, y); };
  auto stepper = odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_dopri5<double>());
  odeint::integrate_times(stepper, rhs, phi, grid.begin(), grid.end(), spacing_ / 4.0,
                          [this](const double& y, double) { values_.push_back(y); });
}

double InterfaceProfile::operator()(double z) const {
  if (pot_.kind() == PotentialKind::quartic) return std::tanh(z / std::sqrt(2.0));
  const double az = std::abs(z);
  const double sign = z < 0.0 ? -1.0 : 1.0;
  if (az >= spacing_ * static_cast<double>(values_.size() - 1)) return sign * values_.back();
  const auto i = static_cast<std::size_t>(az / spacing_);
  const double t = az / spacing_ - static_cast<double>(i);
  const double y0 = values_[i], y1 = values_[i + 1];
  const double d0 = spacing_ * profile_slope(pot_, y0);
  const double d1 = spacing_ * profile_slope(pot_, y1);
  const double t2 = t * t, t3 = t2 * t;
  const double v = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * y1 +
                   (t3 - t2) * d1;
  return sign * v;
}

double InterfaceProfile::slope(double z) const {
  if (pot_.kind() == PotentialKind::quartic) {
    const double c = std::cosh(z / std::sqrt(2.0));
    return 1.0 / (std::sqrt(2.0) * c * c);
  }
  return profile_slope(pot_, (*this)(z));
}

double profile_Phi0(const DoubleWellPotential& pot, double z) {
  if (pot.kind() == PotentialKind::quartic) return std::tanh(z / std::sqrt(2.0));
  const double hw = std::min(kProfileHalfWidth, std::abs(z) + 1.0);
  return InterfaceProfile(pot, hw)(z);
}

double si_quadrature(const ReactionSpec& spec, const DoubleWellPotential& pot) {
  spec.validate();
  const InterfaceProfile profile(pot);
  return adaptive_simpson([&](double z) { return source_S2(spec, pot, profile(z)); },
                          -kProfileHalfWidth, kProfileHalfWidth, 1e-10);
}

double si_closed_form(const ReactionSpec& spec, const DoubleWellPotential& pot) {
  return (spec.k_plus - spec.k_minus) / std::sqrt(pot.ddpsi_minus()) +
         gamma_quadrature(pot) * spec.l_coef;
}

}  // namespace activech::model
