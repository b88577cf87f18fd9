#pragma once

#include "activech/fem/field.hpp"
#include "activech/model/reaction.hpp"

namespace activech::fem {

/// beta (eps / 2 |grad phi|^2 + psi(phi) / eps), gradient term exact for P1,
/// potential term lumped.
double free_energy(const NodalField& phi, const model::PhaseFieldParams& params);

/// (phi, 1)^h
double total_mass(const NodalField& phi);

}  // namespace activech::fem
