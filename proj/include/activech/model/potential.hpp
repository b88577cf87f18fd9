#pragma once

#include <functional>

namespace activech::model {

enum class PotentialKind { quartic, custom };

struct PotentialValues {
  double psi;
  double dpsi;
  double ddpsi;
};

/// Smooth double-well energy density with minima at +-1.
///
/// The quartic well psi(r) = (1 - r^2)^2 / 4 is evaluated in closed form.
/// Custom wells supply psi, psi', psi'' as callables together with the
/// curvatures psi''(+-1); nothing is differentiated symbolically.
class DoubleWellPotential {
 public:
  using Fn = std::function<double(double)>;

  static DoubleWellPotential quartic();
  static DoubleWellPotential custom(Fn psi, Fn dpsi, Fn ddpsi, double ddpsi_plus,
                                    double ddpsi_minus);

  /// The well multiplied by a positive constant (custom kind).
  DoubleWellPotential scaled(double factor) const;

  PotentialKind kind() const { return kind_; }
  double psi(double r) const;
  double dpsi(double r) const;
  double ddpsi(double r) const;
  PotentialValues eval(double r) const { return {psi(r), dpsi(r), ddpsi(r)}; }

  double ddpsi_plus() const { return ddpsi_plus_; }
  double ddpsi_minus() const { return ddpsi_minus_; }

  /// Samples the structural assumptions of the sharp-interface analysis
  /// (nonnegativity, evenness, zeros of psi and psi' at +-1, psi'(0) = 0,
  /// nonzero curvature at the wells). Throws ConfigError on violation.
  void validate(double tol = 1e-12) const;

 private:
  DoubleWellPotential() = default;

  PotentialKind kind_ = PotentialKind::quartic;
  Fn psi_, dpsi_, ddpsi_;
  double ddpsi_plus_ = 2.0;
  double ddpsi_minus_ = 2.0;
};

}  // namespace activech::model
