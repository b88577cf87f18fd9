#include "activech/analysis/modes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "activech/error.hpp"

namespace activech::analysis {

std::vector<double> interface_heights(const NodalField& phi) {
  const auto& m = phi.mesh();
  if (m.dim() != 2) throw ConfigError("interface heights need a 2D mesh");
  const double h1 = m.spacing(0);
  std::vector<double> heights;
  std::vector<int> bad;
  for (int j = 0; j <= m.cells(1); ++j) {
    int count = 0;
    double where = 0.0;
    for (int i = 0; i < m.cells(0); ++i) {
      const double a = phi[m.node_index(i, j)];
      const double b = phi[m.node_index(i + 1, j)];
      if ((a > 0.0) != (b > 0.0)) {
        ++count;
        where = (i + a / (a - b)) * h1;
      }
    }
    if (count != 1) bad.push_back(j);
    heights.push_back(where);
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "mode measurement: columns without a unique crossing:";
    for (std::size_t k = 0; k < bad.size() && k < 20; ++k) os << ' ' << bad[k];
    if (bad.size() > 20) os << " ... (" << bad.size() << " total)";
    throw NumericalError(os.str());
  }
  return heights;
}

std::vector<double> project_modes(const std::vector<double>& heights, double width_Lt, int l_max) {
  if (heights.size() < 2) throw DomainError("mode projection needs at least two samples");
  if (l_max < 0) throw DomainError("l_max must be nonnegative");
  const auto cells = heights.size() - 1;
  const double dx = width_Lt / static_cast<double>(cells);
  std::vector<double> a(static_cast<std::size_t>(l_max) + 1, 0.0);
  for (int l = 0; l <= l_max; ++l) {
    double s = 0.0;
    for (std::size_t j = 0; j <= cells; ++j) {
      const double wt = (j == 0 || j == cells) ? 0.5 : 1.0;
      s += wt * heights[j] * std::cos(std::numbers::pi * l * static_cast<double>(j) / cells);
    }
    a[l] = (l == 0 ? 1.0 : 2.0) / width_Lt * s * dx;
  }
  return a;
}

std::vector<double> mode_amplitudes(const NodalField& phi, int l_max) {
  return project_modes(interface_heights(phi), phi.mesh().length(1), l_max);
}

std::vector<double> ModeSeries::magnitude(int l) const {
  std::vector<double> out;
  out.reserve(amplitudes.size());
  for (const auto& row : amplitudes) out.push_back(std::abs(row.at(static_cast<std::size_t>(l))));
  return out;
}

double fit_growth_rate(const std::vector<double>& times, const std::vector<double>& amplitudes) {
  if (times.size() != amplitudes.size()) throw DomainError("growth fit: size mismatch");
  if (times.size() < 2) throw DomainError("growth fit needs at least two samples");
  const auto n = static_cast<double>(times.size());
  double st = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(amplitudes[k] > 0.0)) throw DomainError("growth fit: nonpositive amplitude in window");
    st += times[k];
    sy += std::log(amplitudes[k]);
  }
  const double tm = st / n, ym = sy / n;
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double dt = times[k] - tm;
    num += dt * (std::log(amplitudes[k]) - ym);
    den += dt * dt;
  }
  if (den == 0.0) throw DomainError("growth fit: all samples at the same time");
  return num / den;
}

std::optional<GrowthWindow> growth_window(const std::vector<double>& times,
                                          const std::vector<double>& magnitudes, double cap,
                                          double start_factor) {
  if (times.size() != magnitudes.size() || times.empty()) return std::nullopt;
  const double start = start_factor * magnitudes.front();
  std::size_t b = 0;
  while (b < magnitudes.size() && !(magnitudes[b] > start)) ++b;
  std::size_t e = b;
  while (e < magnitudes.size() && magnitudes[e] <= cap) ++e;
  if (e < b + 2) return std::nullopt;
  return GrowthWindow{b, e, times[b], times[e - 1]};
}

}  // namespace activech::analysis
