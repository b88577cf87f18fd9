#pragma once

#include <optional>

#include "activech/model/reaction.hpp"

namespace activech::model {

/// Constants of the sharp-interface limit together with the planar box
/// (0, length_L) x (0, width_Lt)^{d-1}.
struct SharpParams {
  double rho_plus = 0.0, rho_minus = 0.0;  ///< K+- / (beta psi''(+-1))
  std::optional<double> d_plus, d_minus;   ///< S+- / rho+-, absent when rho+- = 0
  std::optional<double> lambda_plus, lambda_minus;  ///< sqrt(rho+- / m+-), absent when rho+- <= 0
  double gamma = 0.0;
  double s_interface = 0.0;  ///< S_I
  double length_L = 1.0;
  double width_Lt = 1.0;
  // Phase values carried along for the planar formulas.
  double m_plus = 1.0, m_minus = 1.0;
  double s_plus = 0.0, s_minus = 0.0;

  /// True when rho+- > 0 so the planar profiles exist; otherwise the
  /// planar operations reject the parameters.
  bool planar_supported() const;
  /// Throws ConfigError unless planar_supported().
  void require_planar() const;
};

SharpParams derive_sharp_params(const PhaseFieldParams& p, double length_L, double width_Lt);

/// Convenience for the planar tools, which are parameterised by rho+-
/// rather than K+-: K+- = beta psi''(+-1) rho+-.
ReactionSpec reaction_from_rho(double beta, const DoubleWellPotential& pot, double s_plus,
                               double s_minus, double rho_plus, double rho_minus,
                               double l_coef = 0.0, double r_c = 1.0);

struct NondimReport {
  double x_tilde = 0.0;
  double mu_tilde = 0.0;
  double t_tilde = 0.0;
  double c_l = 0.0;  ///< modified capillary length beta rho- / S-
  double beta_star = 0.0;
  double m_star = 0.0;
  double s_star = 0.0;
  double rho_star = 0.0;
  double s_i_star = 0.0;
};

/// Scales of the nondimensional sharp-interface problem. Requires rho- > 0
/// and S- > 0 (ConfigError otherwise).
NondimReport nondimensionalize(const PhaseFieldParams& p, const SharpParams& sharp);

}  // namespace activech::model
