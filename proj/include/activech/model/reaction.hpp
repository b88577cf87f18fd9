#pragma once

#include "activech/model/potential.hpp"

namespace activech::model {

/// Reaction coefficients of the composed source S_eps = S1 + S2 / eps.
struct ReactionSpec {
  double s_plus = 0.0;   ///< bulk production rate in the +1 phase
  double s_minus = 0.0;  ///< bulk production rate in the -1 phase
  double k_plus = 0.0;   ///< relaxation coefficient towards +1
  double k_minus = 0.0;  ///< relaxation coefficient towards -1
  double l_coef = 0.0;   ///< interfacial production coefficient
  double r_c = 1.0;      ///< crossover threshold, in (0, 1]

  void validate() const;
};

/// Affine-in-phi mobility clamped between the two phase values.
struct MobilitySpec {
  double m_plus = 1.0;
  double m_minus = 1.0;

  void validate() const;
};

struct PhaseFieldParams {
  double beta = 1.0;
  double epsilon = 0.1;
  DoubleWellPotential potential = DoubleWellPotential::quartic();
  ReactionSpec reaction;
  MobilitySpec mobility;

  void validate() const;
};

/// Interpolation function G_k, k in {1,2,3,4}, rescaled to [-r_c, r_c].
/// Throws DomainError for |r| > r_c or k outside 1..4.
double interp_G(int k, double r, double r_c, const DoubleWellPotential& pot);

/// Unscaled building blocks on [-1, 1].
double interp_G1_hat(double r);
double interp_G2_hat(double r, const DoubleWellPotential& pot);
double interp_G4_hat(double r, const DoubleWellPotential& pot);

double source_S1(const ReactionSpec& spec, const DoubleWellPotential& pot, double r);
double source_S2(const ReactionSpec& spec, const DoubleWellPotential& pot, double r);
double source_S(const ReactionSpec& spec, const DoubleWellPotential& pot, double epsilon, double r);

double mobility(const MobilitySpec& spec, double r);

}  // namespace activech::model
