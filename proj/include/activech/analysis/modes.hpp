#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "activech/fem/field.hpp"

namespace activech::analysis {

using fem::NodalField;

/// Interface height x1 = h(x2_j) for every lattice column j, from the zero
/// crossing along x1. NumericalError listing the columns without exactly
/// one crossing.
std::vector<double> interface_heights(const NodalField& phi);

/// Trapezoid-weighted cosine projection of heights sampled at
/// x2_j = j Lt / (n - 1): A_l = (2 - delta_l0) / Lt sum_j'' h_j cos(pi l x2_j / Lt) dx2.
std::vector<double> project_modes(const std::vector<double>& heights, double width_Lt, int l_max);

/// Cosine amplitudes A_0..A_lmax of the interface height (2D meshes only).
std::vector<double> mode_amplitudes(const NodalField& phi, int l_max);

struct ModeSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> amplitudes;  ///< per time, A_0..A_lmax

  /// |A_l| over time.
  std::vector<double> magnitude(int l) const;
};

/// Least-squares slope of log A(t). DomainError for fewer than two points
/// or nonpositive amplitudes.
double fit_growth_rate(const std::vector<double>& times, const std::vector<double>& amplitudes);

struct GrowthWindow {
  std::size_t begin = 0, end = 0;  ///< half-open sample range
  double t_begin = 0.0, t_end = 0.0;
};

/// Linear-regime window: from the first sample where |A| exceeds
/// 3 |A(0)| up to the last sample before |A| exceeds cap (0.1 Lt in the
/// mode experiments). Absent when fewer than two samples qualify.
std::optional<GrowthWindow> growth_window(const std::vector<double>& times,
                                          const std::vector<double>& magnitudes, double cap,
                                          double start_factor = 3.0);

}  // namespace activech::analysis
