// SPDX-License-Identifier: Apache-2.0

#include "stdd/assemble.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "stdd/errors.hpp"

namespace stdd {

namespace {

struct Triplets {
    std::map<std::pair<int, int>, std::pair<double, double>> entries;  // (k, m)

    void add(int i, int j, double k, double m)
    {
        auto& e = entries[{i, j}];
        e.first += k;
        e.second += m;
    }

    PairCsr to_csr(std::size_t n) const
    {
        PairCsr out;
        out.n = n;
        out.ptr.assign(n + 1, 0);
        for (const auto& [ij, km] : entries) out.ptr[ij.first + 1]++;
        for (std::size_t i = 0; i < n; ++i) out.ptr[i + 1] += out.ptr[i];
        out.col.resize(entries.size());
        out.kv.resize(entries.size());
        out.mv.resize(entries.size());
        std::vector<int> cursor(out.ptr.begin(), out.ptr.end() - 1);
        for (const auto& [ij, km] : entries) {
            const int slot = cursor[ij.first]++;
            out.col[slot] = ij.second;
            out.kv[slot] = km.first;
            out.mv[slot] = km.second;
        }
        return out;
    }
};

// element matrices -------------------------------------------------------

void element_tri(const SpaceMesh& m, const std::array<int, 3>& tri,
                 double ke[3][3], double me[3][3])
{
    double x[3], y[3];
    for (int v = 0; v < 3; ++v) {
        x[v] = m.grid_x(tri[v]);
        y[v] = m.grid_y(tri[v]);
    }
    const double det = (x[1] - x[0]) * (y[2] - y[0]) - (x[2] - x[0]) * (y[1] - y[0]);
    const double area = 0.5 * det;
    if (!(area > 0.0)) throw ContractError("assemble: non-positive element area");
    const double gx[3] = {(y[1] - y[2]) / det, (y[2] - y[0]) / det, (y[0] - y[1]) / det};
    const double gy[3] = {(x[2] - x[1]) / det, (x[0] - x[2]) / det, (x[1] - x[0]) / det};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            ke[a][b] = area * (gx[a] * gx[b] + gy[a] * gy[b]);
            me[a][b] = area / 12.0 * (a == b ? 2.0 : 1.0);
        }
}

PairCsr assemble_pair(const SpaceMesh& m, const std::vector<int>& dof_of_grid,
                      std::size_t n_dofs, const std::function<bool(std::size_t)>& keep)
{
    Triplets t;
    if (m.dim == 1) {
        const double h = m.hx;
        for (std::size_t e = 0; e < m.seg.size(); ++e) {
            if (!keep(e)) continue;
            const double ke[2][2] = {{1.0 / h, -1.0 / h}, {-1.0 / h, 1.0 / h}};
            const double me[2][2] = {{h / 3.0, h / 6.0}, {h / 6.0, h / 3.0}};
            for (int a = 0; a < 2; ++a) {
                const int ia = dof_of_grid[m.seg[e][a]];
                if (ia < 0) continue;
                for (int b = 0; b < 2; ++b) {
                    const int ib = dof_of_grid[m.seg[e][b]];
                    if (ib < 0) continue;
                    t.add(ia, ib, ke[a][b], me[a][b]);
                }
            }
        }
    } else {
        for (std::size_t e = 0; e < m.tri.size(); ++e) {
            if (!keep(e)) continue;
            double ke[3][3], me[3][3];
            element_tri(m, m.tri[e], ke, me);
            for (int a = 0; a < 3; ++a) {
                const int ia = dof_of_grid[m.tri[e][a]];
                if (ia < 0) continue;
                for (int b = 0; b < 3; ++b) {
                    const int ib = dof_of_grid[m.tri[e][b]];
                    if (ib < 0) continue;
                    t.add(ia, ib, ke[a][b], me[a][b]);
                }
            }
        }
    }
    return t.to_csr(n_dofs);
}

// boundary quadrature for the Lambda norm ---------------------------------

struct BoundarySegment {
    double mx, my, len;
    int dof0 = -1, dof1 = -1;  // gamma indices of the endpoints, -1 when zero
};

// Walks the boundary polygon of subdomain `side`; only segments on the
// interface line carry nonzero endpoint dofs (extension by zero elsewhere).
std::vector<BoundarySegment> boundary_segments(const SpaceMesh& m, const Decomposition& d,
                                               int side)
{
    std::vector<BoundarySegment> segs;
    const int x_lo = side == 1 ? 0 : d.i_alpha;
    const int x_hi = side == 1 ? d.i_alpha : m.nx;
    std::vector<int> gamma_of_j(m.ny + 1, -1);
    for (std::size_t l = 0; l < d.gamma.size(); ++l) {
        const int g = m.free2grid[d.gamma[l]];
        gamma_of_j[g % (m.ny + 1)] = static_cast<int>(l);
    }
    const auto push = [&](double x0, double y0, double x1, double y1, int d0, int d1) {
        BoundarySegment s;
        s.mx = 0.5 * (x0 + x1);
        s.my = 0.5 * (y0 + y1);
        s.len = std::hypot(x1 - x0, y1 - y0);
        s.dof0 = d0;
        s.dof1 = d1;
        segs.push_back(s);
    };
    // bottom and top edges
    for (int i = x_lo; i < x_hi; ++i) {
        push(i * m.hx, 0.0, (i + 1) * m.hx, 0.0, -1, -1);
        push(i * m.hx, m.ly, (i + 1) * m.hx, m.ly, -1, -1);
    }
    // outer vertical edge (x = 0 or x = Lx)
    const double x_out = side == 1 ? 0.0 : m.lx;
    for (int j = 0; j < m.ny; ++j) push(x_out, j * m.hy, x_out, (j + 1) * m.hy, -1, -1);
    // interface edge, the only one with nonzero trace values
    const double xa = d.i_alpha * m.hx;
    for (int j = 0; j < m.ny; ++j)
        push(xa, j * m.hy, xa, (j + 1) * m.hy, gamma_of_j[j], gamma_of_j[j + 1]);
    return segs;
}

std::vector<double> lambda_gram(const SpaceMesh& m, const Decomposition& d, int side)
{
    const std::size_t g = d.gamma.size();
    std::vector<double> q(g * g, 0.0);
    if (m.dim == 1) {
        q[0] = 1.0;
        return q;
    }
    const auto segs = boundary_segments(m, d, side);
    const std::size_t ns = segs.size();
    // midpoint value of E_i(mu) on segment a is a row with <= 2 nonzeros
    const auto row = [&](const BoundarySegment& s, double* c, int* idx) {
        int n = 0;
        if (s.dof0 >= 0) { idx[n] = s.dof0; c[n++] = 0.5; }
        if (s.dof1 >= 0) { idx[n] = s.dof1; c[n++] = 0.5; }
        return n;
    };
    for (std::size_t a = 0; a < ns; ++a) {
        double ca[2];
        int ia[2];
        const int na = row(segs[a], ca, ia);
        // L^2(boundary) term
        for (int u = 0; u < na; ++u)
            for (int v = 0; v < na; ++v)
                q[ia[v] * g + ia[u]] += segs[a].len * ca[u] * ca[v];
        for (std::size_t b = 0; b < ns; ++b) {
            if (b == a) continue;
            double cb[2];
            int ib[2];
            const int nb = row(segs[b], cb, ib);
            if (na == 0 && nb == 0) continue;
            const double dist2 = (segs[a].mx - segs[b].mx) * (segs[a].mx - segs[b].mx)
                               + (segs[a].my - segs[b].my) * (segs[a].my - segs[b].my);
            // |x - y|^d with d = 2: ordered pairs, so both (a,b) and (b,a) count
            const double w = segs[a].len * segs[b].len / dist2;
            // (v_a - v_b)^2 expanded over the sparse rows
            double cc[4];
            int ii[4];
            int ncc = 0;
            for (int u = 0; u < na; ++u) { ii[ncc] = ia[u]; cc[ncc++] = ca[u]; }
            for (int u = 0; u < nb; ++u) { ii[ncc] = ib[u]; cc[ncc++] = -cb[u]; }
            for (int u = 0; u < ncc; ++u)
                for (int v = 0; v < ncc; ++v)
                    q[ii[v] * g + ii[u]] += w * cc[u] * cc[v];
        }
    }
    return q;
}

}  // namespace

void PairCsr::apply(double kw, double mw, const double* x, double* y) const
{
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int s = ptr[i]; s < ptr[i + 1]; ++s)
            acc += (kw * kv[s] + mw * mv[s]) * x[col[s]];
        y[i] = acc;
    }
}

void PairCsr::apply_sigma(std::complex<double> sigma, const double* xr, const double* xi,
                          double* yr, double* yi) const
{
    const double sr = sigma.real(), si = sigma.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double kr = 0.0, ki = 0.0, mr = 0.0, mi = 0.0;
        for (int s = ptr[i]; s < ptr[i + 1]; ++s) {
            const int j = col[s];
            kr += kv[s] * xr[j];
            ki += kv[s] * xi[j];
            mr += mv[s] * xr[j];
            mi += mv[s] * xi[j];
        }
        yr[i] = kr + sr * mr - si * mi;
        yi[i] = ki + sr * mi + si * mr;
    }
}

double PairCsr::quad_k(const double* x, const double* y) const
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (int s = ptr[i]; s < ptr[i + 1]; ++s) acc += x[i] * kv[s] * y[col[s]];
    return acc;
}

double PairCsr::quad_m(const double* x, const double* y) const
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (int s = ptr[i]; s < ptr[i + 1]; ++s) acc += x[i] * mv[s] * y[col[s]];
    return acc;
}

std::size_t PairCsr::bandwidth() const
{
    std::size_t b = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (int s = ptr[i]; s < ptr[i + 1]; ++s)
            b = std::max<std::size_t>(b, static_cast<std::size_t>(
                    std::abs(static_cast<long>(i) - static_cast<long>(col[s]))));
    return b;
}

SparseOperator assemble(const SpaceMesh& mesh, const Decomposition& dec)
{
    SparseOperator op;
    op.full = assemble_pair(mesh, mesh.grid2free, mesh.n_free(), [](std::size_t) { return true; });

    for (int s = 1; s <= 2; ++s) {
        std::vector<int> dof_of_grid(mesh.n_grid(), -1);
        for (std::size_t g = 0; g < mesh.n_grid(); ++g) {
            const int f = mesh.grid2free[g];
            if (f >= 0) dof_of_grid[g] = dec.glob2side[s - 1][f];
        }
        op.side[s - 1] = assemble_pair(mesh, dof_of_grid, dec.side_dofs[s - 1].size(),
                                       [&](std::size_t e) { return element_side(mesh, dec, e) == s; });
    }

    const std::size_t g = dec.n_gamma();
    op.n_gamma = g;
    op.m_gamma.assign(g * g, 0.0);
    if (mesh.dim == 1) {
        op.m_gamma[0] = 1.0;  // the L^2(Gamma) pairing degenerates to a point value
    } else {
        std::vector<int> gamma_of_j(mesh.ny + 1, -1);
        for (std::size_t l = 0; l < g; ++l)
            gamma_of_j[mesh.free2grid[dec.gamma[l]] % (mesh.ny + 1)] = static_cast<int>(l);
        const double h = mesh.hy;
        for (int j = 0; j < mesh.ny; ++j) {
            const int d0 = gamma_of_j[j], d1 = gamma_of_j[j + 1];
            if (d0 >= 0) op.m_gamma[d0 * g + d0] += h / 3.0;
            if (d1 >= 0) op.m_gamma[d1 * g + d1] += h / 3.0;
            if (d0 >= 0 && d1 >= 0) {
                op.m_gamma[d0 * g + d1] += h / 6.0;
                op.m_gamma[d1 * g + d0] += h / 6.0;
            }
        }
    }
    op.q_lambda[0] = lambda_gram(mesh, dec, 1);
    op.q_lambda[1] = lambda_gram(mesh, dec, 2);
    return op;
}

PairCsr assemble_unreduced(const SpaceMesh& mesh)
{
    std::vector<int> identity(mesh.n_grid());
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
    return assemble_pair(mesh, identity, mesh.n_grid(), [](std::size_t) { return true; });
}

double lambda_norm(const std::vector<double>& mu, const SparseOperator& op, int side)
{
    if (side != 1 && side != 2) throw ParamError("lambda_norm: side must be 1 or 2");
    if (mu.size() != op.n_gamma) throw ContractError("lambda_norm: wrong interface size");
    const auto& q = op.q_lambda[side - 1];
    const std::size_t g = op.n_gamma;
    double acc = 0.0;
    for (std::size_t j = 0; j < g; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < g; ++i) col += q[j * g + i] * mu[i];
        acc += mu[j] * col;
    }
    return std::sqrt(std::max(acc, 0.0));
}

}  // namespace stdd
