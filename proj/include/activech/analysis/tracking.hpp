#pragma once

#include <optional>
#include <vector>

#include "activech/fem/field.hpp"

namespace activech::analysis {

using fem::NodalField;

/// Zeros of the piecewise linear interpolant of phi along the lattice row
/// x2 = line_x2 (ignored in 1D), in increasing x1. Node values of exactly
/// zero count as negative. ConfigError if line_x2 is not a lattice row.
std::vector<double> row_crossings(const NodalField& phi, double line_x2 = 0.0);

/// Unique crossing along the row; NumericalError if there is none.
/// With several crossings the smallest one is returned.
double track_interface(const NodalField& phi, double line_x2 = 0.0);

struct TrackResult {
  double q = 0.0;
  std::vector<double> crossings;
  bool multiple() const { return crossings.size() > 1; }
};

/// Follows one crossing over time: when several exist, the one nearest the
/// previously reported value is chosen.
class InterfaceTracker {
 public:
  explicit InterfaceTracker(double line_x2 = 0.0, std::optional<double> previous = std::nullopt)
      : line_(line_x2), previous_(previous) {}

  TrackResult update(const NodalField& phi);
  double line() const { return line_; }
  bool multiplicity_seen() const { return multiplicity_seen_; }

 private:
  double line_;
  std::optional<double> previous_;
  bool multiplicity_seen_ = false;
};

struct InterfaceTrace {
  double line_x2 = 0.0;
  std::vector<double> times;
  std::vector<double> q;
  bool multiplicity_seen = false;

  /// Appends (t, q); DomainError if t does not increase.
  void push(double t, double qh);
};

}  // namespace activech::analysis
