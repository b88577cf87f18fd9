#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace activech::io {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// |S_I quadrature - closed form| <= 1e-6 for `samples` random
/// (K+, K-, L) in [-10, 10]^3, quartic, r_c = 1.
CheckResult check_si_closed_form(std::uint64_t seed = 1, int samples = 100);
/// |gamma quadrature - 2 sqrt(2) / 3| <= 1e-8.
CheckResult check_gamma();
/// Quartic profile: (1/2) Phi0'^2 = psi(Phi0) and Phi0'' = psi'(Phi0) at 1000
/// points of [-10, 10] to 1e-9, derivatives by sixth-order differences.
CheckResult check_equipartition();
/// Normalized setting, l = 0: factor = -2 sech^2(L/2) to 1e-12 and
/// factor = 2 H'(q*) by centered differences to 1e-8.
CheckResult check_translational_stability();
/// Normalized setting: general factor equals the closed form for
/// l2 = 0..6 to 1e-12, and vanishes at beta_crit(l2) to 1e-10.
CheckResult check_specialized_dispersion();
/// beta = 0.1, S+- = -+8, m+- = rho+- = 1, L = Lt = 1, q = 0.5: the
/// factor over l2 = 0..10 peaks at l2 = 2.
CheckResult check_mode_selection();

/// Continuous-model invariants (potential, interpolation functions,
/// source, mobility, profile, constants).
std::vector<CheckResult> model_checks();
/// Planar sharp-interface invariants (profiles, H, stationary point,
/// amplification, mode lattice).
std::vector<CheckResult> planar_checks();
/// Everything above, in order.
std::vector<CheckResult> invariant_suite();

}  // namespace activech::io
