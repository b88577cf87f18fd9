#include "activech/model/sharp_params.hpp"

#include <cmath>

#include "activech/error.hpp"
#include "activech/model/quadrature.hpp"

namespace activech::model {

bool SharpParams::planar_supported() const {
  return rho_plus > 0.0 && rho_minus > 0.0 && d_plus && d_minus && lambda_plus && lambda_minus;
}

void SharpParams::require_planar() const {
  if (!planar_supported()) {
    throw ConfigError("planar sharp-interface operations require rho_plus > 0 and rho_minus > 0");
  }
  if (!(length_L > 0.0) || !(width_Lt > 0.0)) {
    throw ConfigError("planar domain lengths must be positive");
  }
}

SharpParams derive_sharp_params(const PhaseFieldParams& p, double length_L, double width_Lt) {
  p.validate();
  const auto& pot = p.potential;
  const auto& rs = p.reaction;
  SharpParams sp;
  sp.rho_plus = rs.k_plus / (p.beta * pot.ddpsi_plus());
  sp.rho_minus = rs.k_minus / (p.beta * pot.ddpsi_minus());
  if (sp.rho_plus != 0.0) sp.d_plus = rs.s_plus / sp.rho_plus;
  if (sp.rho_minus != 0.0) sp.d_minus = rs.s_minus / sp.rho_minus;
  if (sp.rho_plus > 0.0) sp.lambda_plus = std::sqrt(sp.rho_plus / p.mobility.m_plus);
  if (sp.rho_minus > 0.0) sp.lambda_minus = std::sqrt(sp.rho_minus / p.mobility.m_minus);
  sp.gamma = pot.kind() == PotentialKind::quartic ? 2.0 * std::sqrt(2.0) / 3.0
                                                  : gamma_quadrature(pot);
  sp.s_interface = rs.r_c == 1.0 ? si_closed_form(rs, pot) : si_quadrature(rs, pot);
  sp.length_L = length_L;
  sp.width_Lt = width_Lt;
  sp.m_plus = p.mobility.m_plus;
  sp.m_minus = p.mobility.m_minus;
  sp.s_plus = rs.s_plus;
  sp.s_minus = rs.s_minus;
  return sp;
}

ReactionSpec reaction_from_rho(double beta, const DoubleWellPotential& pot, double s_plus,
                               double s_minus, double rho_plus, double rho_minus, double l_coef,
                               double r_c) {
  ReactionSpec rs;
  rs.s_plus = s_plus;
  rs.s_minus = s_minus;
  rs.k_plus = beta * pot.ddpsi_plus() * rho_plus;
  rs.k_minus = beta * pot.ddpsi_minus() * rho_minus;
  rs.l_coef = l_coef;
  rs.r_c = r_c;
  return rs;
}

NondimReport nondimensionalize(const PhaseFieldParams& p, const SharpParams& sharp) {
  const double rho_m = sharp.rho_minus;
  const double s_m = p.reaction.s_minus;
  const double m_m = p.mobility.m_minus;
  if (!(rho_m > 0.0) || !(s_m > 0.0)) {
    throw ConfigError("nondimensionalization requires rho_minus > 0 and S_minus > 0");
  }
  NondimReport r;
  r.x_tilde = std::sqrt(m_m / rho_m);
  r.mu_tilde = s_m / rho_m;
  r.t_tilde = 1.0 / s_m;
  r.c_l = p.beta * rho_m / s_m;
  r.beta_star = p.beta * std::pow(rho_m, 1.5) / (std::sqrt(m_m) * s_m);
  r.m_star = p.mobility.m_plus / m_m;
  r.s_star = p.reaction.s_plus / s_m;
  r.rho_star = sharp.rho_plus / rho_m;
  r.s_i_star = sharp.s_interface * std::sqrt(rho_m / m_m) / s_m;
  return r;
}

}  // namespace activech::model
