#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "activech/fem/field.hpp"

namespace activech::fem {

/// Planar front at x1 = q0 + sum_k A_k cos(pi k x2 / Lt), phase +1 on the left.
struct FlatFront {
  double q0 = 0.5;
  std::vector<std::pair<int, double>> modes;  ///< explicit (k, A_k)
  int random_modes = 0;        ///< add modes 1..random_modes with seeded coefficients
  double random_bound = 0.0;   ///< sup of the random height perturbation
  std::uint64_t seed = 0;
};

struct Disk {
  std::array<double, 2> center{0.5, 0.5};
  double r0 = 0.25;
};

/// Disk with radius r0 + amplitude cos(k theta - phase).
struct PerturbedDisk {
  std::array<double, 2> center{0.5, 0.5};
  double r0 = 0.25;
  double amplitude = 0.02;
  int k = 2;
  double phase = 2.0 * std::numbers::pi / 9.0;
};

/// Uniform noise in [-bound, bound] with the lumped mean removed.
struct RandomSpinodal {
  double bound = 0.1;
  std::uint64_t seed = 0;
};

struct Constant {
  double c = 0.0;
};

struct ThreeDisks {
  std::array<double, 3> radii{0.1, 0.1, 0.1};
  std::array<std::array<double, 2>, 3> centers{};
};

using InitSpec = std::variant<FlatFront, Disk, PerturbedDisk, RandomSpinodal, Constant, ThreeDisks>;

std::string init_kind_name(const InitSpec& spec);

/// Nodal interpolation of tanh(d0(x) / (eps sqrt 2)) for the signed-distance
/// kinds (d0 > 0 inside the +1 phase); raw values for the others.
NodalField init_field(std::shared_ptr<const StructuredMesh> mesh, const InitSpec& spec,
                      double epsilon);

/// The height perturbation sum_k A_k cos(pi k x2 / Lt) a FlatFront spec
/// resolves to (random coefficients included), as (k, A_k) pairs.
std::vector<std::pair<int, double>> resolve_front_modes(const FlatFront& spec, double width_Lt);

/// Uniform double in [0, 1) from 53 random bits; identical on every platform.
double uniform01(std::uint64_t bits);

}  // namespace activech::fem
