#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "activech/fem/initial_data.hpp"
#include "activech/fem/stepper.hpp"
#include "activech/model/reaction.hpp"

namespace activech::io {

/// Scalar expression: numbers, `pi`, + - * / and parentheses, so that
/// `1/(16*pi)` evaluates to the same double as 1.0 / (16 * pi).
double parse_number(const std::string& text);

struct DomainConfig {
  int dim = 2;
  std::array<double, 2> lengths{1.0, 1.0};  ///< L1 >= L2
};

struct DiscretizationConfig {
  std::optional<double> epsilon;
  std::optional<double> h;  ///< absent: mesh rule of the epsilon ladder
  double tau = 1e-3;
  double t_end = 1.0;
  fem::CornerLumping corners = fem::CornerLumping::tensor;
};

struct PhysicsConfig {
  std::optional<double> beta;
  std::optional<double> s_plus, s_minus;
  std::optional<std::array<double, 2>> rho;  ///< (rho+, rho-)
  std::optional<std::array<double, 2>> k;    ///< (K+, K-)
  double l_coef = 0.0;
  double r_c = 1.0;
  double m_plus = 1.0, m_minus = 1.0;
};

struct OutputConfig {
  std::string dir = ".";
  int stride = 10;       ///< steps between diagnostic rows
  int vtk_stride = 0;    ///< steps between snapshots; 0 writes the first and last only
  bool vtk = true;
  bool checkpoint = true;
  std::optional<bool> track_front;  ///< default: on for flat fronts
  double track_line = 0.0;
  int mode_lmax = -1;
  std::optional<std::string> restart;  ///< checkpoint to continue from
};

struct ConvergeConfig {
  std::vector<double> epsilons;
  int dim = 1;
  std::optional<double> q0;  ///< default: the flat-front q0, else 0.3
  double reference_dt = 1e-5;
  unsigned threads = 1;
};

struct ModesConfig {
  int l_max = 10;
  double cap = 0.1;          ///< linear regime ends at |A_l| = cap Lt
  double start_factor = 3.0;
};

struct StabilityConfig {
  int dim = 2;    ///< 2 or 3: transverse lattice N_0^(dim - 1)
  int l_max = 10; ///< modes with |l|^2 <= l_max^2
  std::optional<double> q;  ///< front position; default the stationary one
};

struct SharpOdeConfig {
  std::optional<double> q0;
  double dt = 1e-4;
  int stride = 100;
};

struct SiTableConfig {
  double k_min = -10.0, k_max = 10.0;
  int k_count = 5;
  std::vector<double> l_values{0.0, 1.0};
  std::vector<double> r_c_values{1.0, 0.5};
};

struct RunConfig {
  DomainConfig domain;
  DiscretizationConfig disc;
  PhysicsConfig physics;
  fem::InitSpec init = fem::FlatFront{};
  fem::SolverConfig solver;
  OutputConfig output;
  ConvergeConfig converge;
  ModesConfig modes;
  StabilityConfig stability;
  SharpOdeConfig sharp_ode;
  SiTableConfig si_table;
  std::uint64_t seed = 0;
  /// Every accepted key as `section.key` -> text after overrides; the
  /// manifest records this together with the expanded defaults.
  std::map<std::string, std::string> raw;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Sectioned key/value document (INI syntax). Overrides are `section.key`
/// pairs applied on top of the document. Unknown sections or keys, bad
/// values and over- or under-specified physics raise ConfigError naming the
/// field (and the line when it came from the document).
RunConfig parse_config(const std::string& text, const Overrides& overrides = {});
RunConfig load_config(const std::string& path, const Overrides& overrides = {});

/// Phase-field parameters; K+- derived from rho+- when those were given.
/// Requires beta, epsilon, S+-.
model::PhaseFieldParams phase_field_params(const RunConfig& cfg);
/// Same without epsilon (for the sharp-interface commands); epsilon is set to 1.
model::PhaseFieldParams sharp_model_params(const RunConfig& cfg);

/// Mesh size in effect: disc.h, or the ladder rule for eps = 1/(2^k pi).
double resolved_mesh_size(const RunConfig& cfg);

/// Every field with defaults expanded, as section -> key -> text.
std::map<std::string, std::map<std::string, std::string>> resolved_fields(const RunConfig& cfg);

}  // namespace activech::io
