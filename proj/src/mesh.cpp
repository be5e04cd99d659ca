// SPDX-License-Identifier: Apache-2.0

#include "stdd/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "stdd/errors.hpp"

namespace stdd {

double SpaceMesh::grid_x(int g) const
{
    return dim == 1 ? static_cast<double>(g) * hx
                    : static_cast<double>(g / (ny + 1)) * hx;
}

double SpaceMesh::grid_y(int g) const
{
    return dim == 1 ? 0.0 : static_cast<double>(g % (ny + 1)) * hy;
}

SpaceMesh build_mesh(int dim, double lx, double ly, int nx, int ny)
{
    if (dim != 1 && dim != 2) throw ParamError("build_mesh: dim must be 1 or 2");
    if (!(lx > 0.0) || (dim == 2 && !(ly > 0.0)))
        throw ParamError("build_mesh: bounds must be positive");
    if (nx < 3 || (dim == 2 && ny < 3))
        throw ParamError("build_mesh: need at least 3 cells per axis");

    SpaceMesh m;
    m.dim = dim;
    m.lx = lx;
    m.ly = dim == 2 ? ly : 0.0;
    m.nx = nx;
    m.ny = dim == 2 ? ny : 0;
    m.hx = lx / nx;
    m.hy = dim == 2 ? ly / ny : 0.0;

    if (dim == 1) {
        m.grid2free.assign(nx + 1, -1);
        for (int i = 1; i < nx; ++i) {
            m.grid2free[i] = static_cast<int>(m.node_x.size());
            m.node_x.push_back(i * m.hx);
            m.node_y.push_back(0.0);
            m.free2grid.push_back(i);
        }
        for (int i = 0; i < nx; ++i) m.seg.push_back({i, i + 1});
        return m;
    }

    m.grid2free.assign((nx + 1) * (ny + 1), -1);
    for (int i = 1; i < nx; ++i) {
        for (int j = 1; j < ny; ++j) {
            const int g = m.grid_id(i, j);
            m.grid2free[g] = static_cast<int>(m.node_x.size());
            m.node_x.push_back(i * m.hx);
            m.node_y.push_back(j * m.hy);
            m.free2grid.push_back(g);
        }
    }
    // fixed diagonal a-c: (a b c) and (a c d), both counter-clockwise
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const int a = m.grid_id(i, j);
            const int b = m.grid_id(i + 1, j);
            const int c = m.grid_id(i + 1, j + 1);
            const int d = m.grid_id(i, j + 1);
            m.tri.push_back({a, b, c});
            m.tri.push_back({a, c, d});
        }
    }
    return m;
}

Decomposition decompose(const SpaceMesh& mesh, double alpha)
{
    if (!(alpha > 0.0 && alpha < mesh.lx))
        throw ParamError("decompose: alpha must lie inside (0, Lx)");
    const int ia = static_cast<int>(std::lround(alpha / mesh.hx));
    if (ia <= 0 || ia >= mesh.nx)
        throw ParamError("decompose: alpha snaps to a boundary line");

    Decomposition d;
    d.alpha = ia * mesh.hx;
    d.i_alpha = ia;
    d.gamma_first = {false, true};

    const auto x_index = [&](int f) {
        return mesh.dim == 1 ? mesh.free2grid[f] : mesh.free2grid[f] / (mesh.ny + 1);
    };
    for (int f = 0; f < static_cast<int>(mesh.n_free()); ++f) {
        const int i = x_index(f);
        if (i < ia)
            d.interior1.push_back(f);
        else if (i == ia)
            d.gamma.push_back(f);
        else
            d.interior2.push_back(f);
    }
    if (d.gamma.empty()) throw ParamError("decompose: empty interface");

    // side 1: interior block then gamma; side 2: gamma then interior.
    // Both stay lexicographic, so subdomain matrices remain banded.
    d.side_dofs[0] = d.interior1;
    d.side_dofs[0].insert(d.side_dofs[0].end(), d.gamma.begin(), d.gamma.end());
    d.side_dofs[1] = d.gamma;
    d.side_dofs[1].insert(d.side_dofs[1].end(), d.interior2.begin(), d.interior2.end());
    d.n_interior = {d.interior1.size(), d.interior2.size()};

    for (int s = 0; s < 2; ++s) {
        d.glob2side[s].assign(mesh.n_free(), -1);
        for (std::size_t l = 0; l < d.side_dofs[s].size(); ++l)
            d.glob2side[s][d.side_dofs[s][l]] = static_cast<int>(l);
        d.gamma_in_side[s].resize(d.gamma.size());
        for (std::size_t l = 0; l < d.gamma.size(); ++l)
            d.gamma_in_side[s][l] = d.glob2side[s][d.gamma[l]];
    }
    return d;
}

int element_side(const SpaceMesh& mesh, const Decomposition& dec, std::size_t elem)
{
    if (mesh.dim == 1) {
        const int i = mesh.seg[elem][0];
        return i < dec.i_alpha ? 1 : 2;
    }
    int max_i = 0;
    for (int v : mesh.tri[elem]) max_i = std::max(max_i, v / (mesh.ny + 1));
    return max_i <= dec.i_alpha ? 1 : 2;
}

}  // namespace stdd
