#pragma once

#include <optional>
#include <vector>

#include "activech/model/sharp_params.hpp"

namespace activech::sharp {

using model::SharpParams;

enum class Side { plus, minus };

/// Planar front q(t) separating (0, q) (phase +1) from (q, L) (phase -1).
struct PlanarConfig {
  SharpParams sharp;
  double q0 = 0.5;
  double dt = 1e-4;
  double t_end = 1.0;
  int output_stride = 1;  ///< record every n-th step (the final time is always recorded)

  void validate() const;
};

/// Quasi-static chemical potential of the planar solution on one side.
double mu_planar(const SharpParams& sp, Side side, double q, double z);

/// Right-hand side H(q) of the front ODE dq/dt = H(q).
double velocity_H(const SharpParams& sp, double q);

/// Root of H by bisection on [delta, L - delta], delta = 1e-12 L. Absent
/// when H has the same sign at both ends.
std::optional<double> find_stationary(const SharpParams& sp);

struct TrajectoryPoint {
  double t;
  double q;
  double H;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  bool boundary_hit = false;  ///< q left (0, L); integration stopped there

  double final_q() const { return points.back().q; }
};

/// Classical fourth-order Runge-Kutta integration of dq/dt = H(q).
Trajectory integrate_q(const PlanarConfig& cfg);

}  // namespace activech::sharp
