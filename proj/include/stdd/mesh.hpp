// SPDX-License-Identifier: Apache-2.0
//
// Structured P1 meshes on an interval (dim 1) or an axis-aligned rectangle
// (dim 2, quads split by the fixed lower-left/upper-right diagonal), with the
// homogeneous Dirichlet boundary eliminated. Free nodes are ordered
// lexicographically by coordinate (x, then y), so a vertical interface line
// is one contiguous block and subdomain orderings stay banded.
#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace stdd {

struct SpaceMesh {
    int dim = 2;
    double lx = 1.0, ly = 1.0;
    int nx = 0, ny = 0;  // cells per axis (ny unused in dim 1)
    double hx = 0.0, hy = 0.0;

    // free (interior) nodes
    std::vector<double> node_x, node_y;
    std::vector<int> free2grid;
    std::vector<int> grid2free;  // -1 on the Dirichlet boundary

    // elements over grid node ids: triangles in dim 2, segments in dim 1
    std::vector<std::array<int, 3>> tri;
    std::vector<std::array<int, 2>> seg;

    std::size_t n_free() const { return node_x.size(); }
    std::size_t n_grid() const { return grid2free.size(); }

    int grid_id(int i, int j) const { return i * (ny + 1) + j; }
    double grid_x(int g) const;
    double grid_y(int g) const;
};

SpaceMesh build_mesh(int dim, double lx, double ly, int nx, int ny);

struct Decomposition {
    double alpha = 0.0;  // snapped interface coordinate x = alpha
    int i_alpha = 0;     // interface grid-line index

    // disjoint, exhaustive partition of the free nodes
    std::vector<int> interior1, interior2, gamma;

    // side-local orderings (entries are global free indices, lexicographic);
    // side 1 carries gamma as its trailing block, side 2 as its leading block
    std::array<std::vector<int>, 2> side_dofs;
    std::array<std::vector<int>, 2> glob2side;      // -1 when not on that side
    std::array<std::vector<int>, 2> gamma_in_side;  // side-local position of gamma node l
    std::array<std::size_t, 2> n_interior{};
    std::array<bool, 2> gamma_first{};              // false for side 1, true for side 2

    std::size_t n_gamma() const { return gamma.size(); }
    // side-local index -> interior-local index (contiguous), or -1 on gamma
    int interior_local(int side, std::size_t loc) const
    {
        if (side == 1) return loc < n_interior[0] ? static_cast<int>(loc) : -1;
        return loc < gamma.size() ? -1 : static_cast<int>(loc - gamma.size());
    }
};

// Snaps alpha to the nearest interior grid line; throws ParamError when the
// snap lands on the outer boundary.
Decomposition decompose(const SpaceMesh& mesh, double alpha);

// Side an element belongs to (1 or 2); elements never straddle the interface.
int element_side(const SpaceMesh& mesh, const Decomposition& dec, std::size_t elem);

}  // namespace stdd
