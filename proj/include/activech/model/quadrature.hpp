#pragma once

#include <functional>
#include <vector>

#include "activech/model/potential.hpp"
#include "activech/model/reaction.hpp"

namespace activech::model {

/// Half-width of the truncated z-axis used for integrals along the
/// interface profile; Phi0 is within 1e-17 of +-1 there for the quartic.
inline constexpr double kProfileHalfWidth = 40.0 * 1.4142135623730951;

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance
/// abs_tol. Every branch is refined at least min_depth times so integrands
/// that happen to vanish at the first few nodes are not accepted early.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int min_depth = 6, int max_depth = 48);

/// gamma = int_{-1}^{1} sqrt(2 psi(s)) ds (2 sqrt(2) / 3 for the quartic).
double gamma_quadrature(const DoubleWellPotential& pot);

/// Leading-order interface profile Phi0 solving Phi0'' = psi'(Phi0),
/// Phi0(0) = 0, Phi0(+-inf) = +-1.
///
/// The quartic uses tanh(z / sqrt 2). Custom wells integrate the
/// equipartition reduction Phi0' = sqrt(2 psi(Phi0)) once on a uniform
/// z-grid with an adaptive Runge-Kutta scheme, then evaluate by cubic
/// Hermite interpolation (the slope is known exactly at every node).
class InterfaceProfile {
 public:
  explicit InterfaceProfile(const DoubleWellPotential& pot,
                            double half_width = kProfileHalfWidth, double spacing = 1e-3);

  double operator()(double z) const;
  /// Phi0'(z) from the equipartition identity.
  double slope(double z) const;

 private:
  DoubleWellPotential pot_;
  double half_width_;
  double spacing_;
  std::vector<double> values_;  // Phi0 at z = i * spacing, i >= 0
};

double profile_Phi0(const DoubleWellPotential& pot, double z);

/// S_I = int S2(Phi0(z)) dz over [-Z, Z], Z = kProfileHalfWidth, abs tol 1e-10.
double si_quadrature(const ReactionSpec& spec, const DoubleWellPotential& pot);

/// Closed form valid for r_c = 1: (K+ - K-) / sqrt(psi''(-1)) + gamma L.
double si_closed_form(const ReactionSpec& spec, const DoubleWellPotential& pot);

}  // namespace activech::model
