#include "activech/model/potential.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "activech/error.hpp"

namespace activech::model {

DoubleWellPotential DoubleWellPotential::quartic() {
  DoubleWellPotential pot;
  pot.kind_ = PotentialKind::quartic;
  pot.ddpsi_plus_ = 2.0;
  pot.ddpsi_minus_ = 2.0;
  return pot;
}

DoubleWellPotential DoubleWellPotential::custom(Fn psi, Fn dpsi, Fn ddpsi, double ddpsi_plus,
                                                double ddpsi_minus) {
  if (!psi || !dpsi || !ddpsi) {
    throw ConfigError("custom potential requires psi, psi' and psi''");
  }
  if (ddpsi_plus == 0.0 || ddpsi_minus == 0.0) {
    throw ConfigError("custom potential must have nonzero curvature at +-1");
  }
  DoubleWellPotential pot;
  pot.kind_ = PotentialKind::custom;
  pot.psi_ = std::move(psi);
  pot.dpsi_ = std::move(dpsi);
  pot.ddpsi_ = std::move(ddpsi);
  pot.ddpsi_plus_ = ddpsi_plus;
  pot.ddpsi_minus_ = ddpsi_minus;
  return pot;
}

DoubleWellPotential DoubleWellPotential::scaled(double factor) const {
  if (!(factor > 0.0)) throw ConfigError("potential scale factor must be positive");
  auto base = *this;
  return custom([base, factor](double r) { return factor * base.psi(r); },
                [base, factor](double r) { return factor * base.dpsi(r); },
                [base, factor](double r) { return factor * base.ddpsi(r); },
                factor * ddpsi_plus_, factor * ddpsi_minus_);
}

double DoubleWellPotential::psi(double r) const {
  if (kind_ == PotentialKind::quartic) {
    const double a = 1.0 - r * r;
    return 0.25 * a * a;
  }
  return psi_(r);
}

double DoubleWellPotential::dpsi(double r) const {
  if (kind_ == PotentialKind::quartic) return r * (r * r - 1.0);
  return dpsi_(r);
}

double DoubleWellPotential::ddpsi(double r) const {
  if (kind_ == PotentialKind::quartic) return 3.0 * r * r - 1.0;
  return ddpsi_(r);
}

void DoubleWellPotential::validate(double tol) const {
  auto fail = [](const std::string& what) { throw ConfigError("double-well potential: " + what); };
  for (double r : {-1.0, 1.0}) {
    if (std::abs(psi(r)) > tol) fail("psi(+-1) must vanish");
    if (std::abs(dpsi(r)) > tol) fail("psi'(+-1) must vanish");
  }
  if (std::abs(dpsi(0.0)) > tol) fail("psi'(0) must vanish");
  if (ddpsi_plus_ == 0.0 || ddpsi_minus_ == 0.0) fail("psi''(+-1) must be nonzero");
  if (std::abs(ddpsi(1.0) - ddpsi_plus_) > 1e-8 * std::max(1.0, std::abs(ddpsi_plus_)) ||
      std::abs(ddpsi(-1.0) - ddpsi_minus_) > 1e-8 * std::max(1.0, std::abs(ddpsi_minus_))) {
    fail("declared psi''(+-1) disagrees with the supplied psi''");
  }
  constexpr int n = 401;
  for (int i = 0; i < n; ++i) {
    const double r = -2.0 + 4.0 * i / (n - 1);
    const double v = psi(r);
    if (v < -tol) {
      std::ostringstream os;
      os << "psi must be nonnegative (psi(" << r << ") = " << v << ")";
      fail(os.str());
    }
    if (std::abs(v - psi(-r)) > tol * std::max(1.0, std::abs(v))) fail("psi must be even");
  }
}

}  // namespace activech::model
