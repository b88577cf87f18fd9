#pragma once

#include <optional>
#include <string>
#include <vector>

#include "activech/fem/mesh.hpp"
#include "activech/model/reaction.hpp"

namespace activech::analysis {

/// Mesh size of the epsilon ladder: for eps = 1 / (2^k pi), h = 2^-(3 + k).
/// Absent when eps is not of that form (to relative 1e-9).
std::optional<double> ladder_mesh_size(double epsilon);

/// Planar front problem on (0, L) (x (0, Lt) in 2D), phase +1 on (0, q0).
struct ConvergenceSetup {
  model::PhaseFieldParams params;  ///< epsilon is replaced per row
  double length_L = 1.0;
  double width_Lt = 1.0;
  int dim = 1;
  double q0 = 0.3;
  double t_end = 1.0;
  double tau = 1e-3;
  std::vector<double> epsilons;
  std::optional<double> h;  ///< fixed mesh size; otherwise the ladder rule
  double reference_dt = 1e-5;
  fem::CornerLumping corners = fem::CornerLumping::tensor;
  unsigned threads = 1;  ///< runs executed concurrently

  void validate() const;
};

struct ConvergenceRow {
  double epsilon = 0.0;
  double h = 0.0;
  std::optional<double> q_h;
  std::optional<double> error;
  std::optional<double> eoc;
  std::optional<std::string> failure;
  std::vector<int> newton_iterations;
};

struct ConvergenceTable {
  double q_reference = 0.0;
  std::vector<ConvergenceRow> rows;
};

/// log(e_prev / e) / log(eps_prev / eps); absent when any input is
/// nonpositive or the epsilons coincide.
std::optional<double> eoc(double e_prev, double e, double eps_prev, double eps);

ConvergenceTable convergence_study(const ConvergenceSetup& setup);

}  // namespace activech::analysis
