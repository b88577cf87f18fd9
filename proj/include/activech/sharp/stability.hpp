#pragma once

#include <optional>
#include <vector>

#include "activech/model/sharp_params.hpp"

namespace activech::sharp {

using model::SharpParams;

/// Transverse wave vector of a cosine perturbation of the planar front.
struct ModeIndex {
  std::vector<int> l_vec;  ///< entries in N_0, length d - 1
  int l_sq = 0;            ///< sum of squared entries

  static ModeIndex from_vector(std::vector<int> l);
  /// A 2D mode (single transverse index).
  static ModeIndex planar(int l2) { return from_vector({l2}); }
};

struct StabilityRow {
  ModeIndex mode;
  double gamma_plus = 0.0, gamma_minus = 0.0;  ///< decay rates Gamma+- of the perturbation
  double a_plus = 0.0, a_minus = 0.0;
  double factor = 0.0;  ///< amplification factor; the perturbation grows like exp(factor t / 2)
  std::optional<double> beta_crit;  ///< only in the normalized setting, l_sq > 0

  double growth_rate() const { return 0.5 * factor; }
};

/// Linear amplification factor of mode `mode` for a front frozen at q.
/// beta is passed separately: the surface-tension term uses beta while the
/// bulk constants come from `sp`.
StabilityRow amplification(const SharpParams& sp, double beta, double q, const ModeIndex& mode);

/// Closed-form critical beta of the normalized setting
/// (S+ = -1, S- = m+- = rho+- = 1, q* = L / 2). DomainError for l_sq = 0.
double beta_crit(double length_L, double width_Lt, double gamma, const ModeIndex& mode);

/// Amplification factor of the normalized setting in closed form:
/// -2 + g tanh(L g / 2) (2 tanh(L / 2) - gamma beta k2), k2 = pi^2 |l|^2 / Lt^2,
/// g = sqrt(1 + k2).
double amplification_normalized(double length_L, double width_Lt, double gamma, double beta,
                                const ModeIndex& mode);

/// Whether sp/q match the normalized setting to `tol`.
bool is_normalized_setting(const SharpParams& sp, double q, double tol = 1e-12);

/// Critical beta for general parameters: root of the amplification factor
/// in beta, found by bisection. Absent when the factor does not change sign
/// on (0, beta_max].
std::optional<double> critical_beta(const SharpParams& sp, double q, const ModeIndex& mode,
                                    double beta_max = 1e6);

struct ModeEnumeration {
  std::vector<ModeIndex> all;              ///< every l in N_0^{d-1} with |l|^2 <= max
  std::vector<ModeIndex> representatives;  ///< one per distinct |l|^2, ascending
};

ModeEnumeration enumerate_modes(int dim, int max_lsq);

}  // namespace activech::sharp
