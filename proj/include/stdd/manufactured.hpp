// SPDX-License-Identifier: Apache-2.0
//
// Manufactured problems: smooth space-time solutions with sources derived
// spectrally in time and exactly at the nodes in space.
//
//   zero       u* = 0
//   eigen      u* = sin(pi x/Lx) [ * sin(pi y/Ly) ], time-constant
//   bump-sine  u* = exp(-1/(1-tau^2)) bump in scaled time x the same sine;
//              the bump is supported on [T/8, T/2], so with the default
//              window T = 8 the source lives in [1, 4] and the solution has
//              decayed to roundoff well before the period wraps.
#pragma once

#include <string>

#include "stdd/fields.hpp"
#include "stdd/mesh.hpp"
#include "stdd/time_grid.hpp"

namespace stdd {

struct ManufacturedCase {
    SpaceTimeField f;        // source samples on the free nodes
    SpaceTimeField u_exact;  // nodal samples of u*
};

// t_lo/t_hi pin the bump support in absolute seconds; non-positive values
// default to period/8 and period/2 of the given grid. Runs on a padded
// window pass the base-window support so the physical problem is unchanged.
ManufacturedCase manufactured_case(const SpaceMesh& mesh, const TimeGrid& grid,
                                   const std::string& id, double amplitude = 1.0,
                                   double t_lo = -1.0, double t_hi = -1.0);

bool manufactured_id_known(const std::string& id);

}  // namespace stdd
