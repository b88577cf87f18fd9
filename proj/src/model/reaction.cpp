#include "activech/model/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "activech/error.hpp"

namespace activech::model {

void ReactionSpec::validate() const {
  if (!(r_c > 0.0 && r_c <= 1.0)) {
    throw ConfigError("r_c must lie in (0, 1], got " + std::to_string(r_c));
  }
  for (double v : {s_plus, s_minus, k_plus, k_minus, l_coef}) {
    if (!std::isfinite(v)) throw ConfigError("reaction coefficients must be finite");
  }
}

void MobilitySpec::validate() const {
  if (!(m_plus > 0.0) || !(m_minus > 0.0)) {
    throw ConfigError("mobilities m_plus and m_minus must be positive");
  }
}

void PhaseFieldParams::validate() const {
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  reaction.validate();
  mobility.validate();
}

double interp_G1_hat(double r) {
  const double s = r + 1.0;
  return 0.75 * s * s - 0.25 * s * s * s;
}

double interp_G2_hat(double r, const DoubleWellPotential& pot) {
  const double root = std::sqrt(std::max(0.0, 2.0 * pot.psi(r)));
  return -0.5 / std::sqrt(pot.ddpsi_minus()) * (r - 1.0) * root;
}

double interp_G4_hat(double r, const DoubleWellPotential& pot) { return 2.0 * pot.psi(r); }

double interp_G(int k, double r, double r_c, const DoubleWellPotential& pot) {
  if (!(r_c > 0.0 && r_c <= 1.0)) throw DomainError("interp_G: r_c must lie in (0, 1]");
  if (std::abs(r) > r_c) {
    throw DomainError("interp_G: |r| = " + std::to_string(std::abs(r)) + " exceeds r_c");
  }
  const double s = r / r_c;
  switch (k) {
    case 1:
      return interp_G1_hat(s);
    case 2:
      return r_c * interp_G2_hat(s, pot);
    case 3:
      return -r_c * interp_G2_hat(-s, pot);
    case 4:
      return interp_G4_hat(s, pot);
    default:
      throw DomainError("interp_G: index must be 1, 2, 3 or 4");
  }
}

double source_S1(const ReactionSpec& spec, const DoubleWellPotential& pot, double r) {
  if (r >= spec.r_c) return spec.s_plus;
  if (r <= -spec.r_c) return spec.s_minus;
  return spec.s_minus + interp_G(1, r, spec.r_c, pot) * (spec.s_plus - spec.s_minus);
}

double source_S2(const ReactionSpec& spec, const DoubleWellPotential& pot, double r) {
  const double rc = spec.r_c;
  if (r >= rc) return -spec.k_plus * (r - 1.0);
  if (r <= -rc) return -spec.k_minus * (r + 1.0);
  const double g1 = interp_G(1, r, rc, pot);
  return -spec.k_minus * interp_G(2, r, rc, pot) - spec.k_plus * interp_G(3, r, rc, pot) +
         spec.l_coef * interp_G(4, r, rc, pot) - spec.k_plus * (rc - 1.0) * g1 -
         spec.k_minus * (1.0 - rc) * (1.0 - g1);
}

double source_S(const ReactionSpec& spec, const DoubleWellPotential& pot, double epsilon,
                double r) {
  return source_S1(spec, pot, r) + source_S2(spec, pot, r) / epsilon;
}

double mobility(const MobilitySpec& spec, double r) {
  const double w = std::clamp(0.5 * (1.0 + r), 0.0, 1.0);
  return spec.m_minus + (spec.m_plus - spec.m_minus) * w;
}

}  // namespace activech::model
