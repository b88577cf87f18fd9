#include "activech/analysis/tracking.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "activech/error.hpp"

namespace activech::analysis {

namespace {

int lattice_row(const fem::StructuredMesh& m, double line_x2) {
  if (m.dim() == 1) return 0;
  const double h2 = m.spacing(1);
  const double j = std::round(line_x2 / h2);
  if (j < 0 || j > m.cells(1) || std::abs(j * h2 - line_x2) > 1e-9 * h2) {
    std::ostringstream os;
    os << "tracking line x2 = " << line_x2 << " is not a lattice row";
    throw ConfigError(os.str());
  }
  return static_cast<int>(j);
}

}  // namespace

std::vector<double> row_crossings(const NodalField& phi, double line_x2) {
  const auto& m = phi.mesh();
  const int j = lattice_row(m, line_x2);
  const double h1 = m.spacing(0);
  std::vector<double> out;
  for (int i = 0; i < m.cells(0); ++i) {
    const double a = phi[m.node_index(i, j)];
    const double b = phi[m.node_index(i + 1, j)];
    if ((a > 0.0) != (b > 0.0)) out.push_back((i + a / (a - b)) * h1);
  }
  return out;
}

double track_interface(const NodalField& phi, double line_x2) {
  const auto c = row_crossings(phi, line_x2);
  if (c.empty()) throw NumericalError("interface tracking: phi does not change sign along the line");
  return c.front();
}

TrackResult InterfaceTracker::update(const NodalField& phi) {
  TrackResult r;
  r.crossings = row_crossings(phi, line_);
  if (r.crossings.empty())
    throw NumericalError("interface tracking: phi does not change sign along the line");
  r.q = r.crossings.front();
  if (previous_) {
    double best = std::numeric_limits<double>::infinity();
    for (double c : r.crossings)
      if (std::abs(c - *previous_) < best) {
        best = std::abs(c - *previous_);
        r.q = c;
      }
  }
  if (r.multiple()) multiplicity_seen_ = true;
  previous_ = r.q;
  return r;
}

void InterfaceTrace::push(double t, double qh) {
  if (!times.empty() && !(t > times.back())) throw DomainError("interface trace times must increase");
  times.push_back(t);
  q.push_back(qh);
}

}  // namespace activech::analysis
