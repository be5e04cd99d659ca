// SPDX-License-Identifier: Apache-2.0

#include "stdd/solver.hpp"

#include <algorithm>
#include <cmath>

#include "stdd/errors.hpp"
#include "stdd/parallel.hpp"

namespace stdd {

using cd = std::complex<double>;

namespace modes {

void apply_sigma(const PairCsr& a, cd sigma, const cd* x, cd* y)
{
    const double sr = sigma.real(), si = sigma.imag();
    for (std::size_t i = 0; i < a.n; ++i) {
        double kr = 0.0, ki = 0.0, mr = 0.0, mi = 0.0;
        for (int s = a.ptr[i]; s < a.ptr[i + 1]; ++s) {
            const cd xj = x[a.col[s]];
            kr += a.kv[s] * xj.real();
            ki += a.kv[s] * xj.imag();
            mr += a.mv[s] * xj.real();
            mi += a.mv[s] * xj.imag();
        }
        y[i] = {kr + sr * mr - si * mi, ki + sr * mi + si * mr};
    }
}

void apply_mass(const PairCsr& a, const cd* x, cd* y)
{
    for (std::size_t i = 0; i < a.n; ++i) {
        double mr = 0.0, mi = 0.0;
        for (int s = a.ptr[i]; s < a.ptr[i + 1]; ++s) {
            const cd xj = x[a.col[s]];
            mr += a.mv[s] * xj.real();
            mi += a.mv[s] * xj.imag();
        }
        y[i] = {mr, mi};
    }
}

double quad_k(const PairCsr& a, const cd* y)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < a.n; ++i)
        for (int s = a.ptr[i]; s < a.ptr[i + 1]; ++s)
            acc += a.kv[s] * (y[i].real() * y[a.col[s]].real() + y[i].imag() * y[a.col[s]].imag());
    return acc;
}

double quad_m(const PairCsr& a, const cd* y)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < a.n; ++i)
        for (int s = a.ptr[i]; s < a.ptr[i + 1]; ++s)
            acc += a.mv[s] * (y[i].real() * y[a.col[s]].real() + y[i].imag() * y[a.col[s]].imag());
    return acc;
}

}  // namespace modes

namespace {

double vec_norm(const cd* x, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
    return std::sqrt(s);
}

BandLU factor_block(const PairCsr& a, cd sigma, const std::vector<int>& sub,
                    std::size_t nb, std::size_t bw)
{
    BandLU lu;
    lu.init(nb, bw, bw);
    for (std::size_t i = 0; i < a.n; ++i) {
        const int bi = sub.empty() ? static_cast<int>(i) : sub[i];
        if (bi < 0) continue;
        for (int s = a.ptr[i]; s < a.ptr[i + 1]; ++s) {
            const int bj = sub.empty() ? a.col[s] : sub[a.col[s]];
            if (bj < 0) continue;
            lu.at(bi, bj) = cd(a.kv[s], 0.0) + sigma * a.mv[s];
        }
    }
    if (nb > 0) lu.factor();
    return lu;
}

}  // namespace

Problem Problem::build(SpaceMesh mesh, double alpha, TimeGrid grid, int workers)
{
    Problem p;
    p.mesh = std::move(mesh);
    p.dec = decompose(p.mesh, alpha);
    p.op = assemble(p.mesh, p.dec);
    p.grid = grid;
    p.sym = FrequencySymbols::make(grid);
    p.workers = workers;

    p.band_full = p.op.full.bandwidth();
    for (int s = 0; s < 2; ++s) {
        auto& map = p.interior_map[s];
        map.resize(p.dec.side_dofs[s].size());
        for (std::size_t l = 0; l < map.size(); ++l)
            map[l] = p.dec.interior_local(s + 1, l);
        std::size_t bw = 0;
        const auto& a = p.op.side[s];
        for (std::size_t i = 0; i < a.n; ++i) {
            if (map[i] < 0) continue;
            for (int e = a.ptr[i]; e < a.ptr[i + 1]; ++e)
                if (map[a.col[e]] >= 0)
                    bw = std::max<std::size_t>(bw, static_cast<std::size_t>(
                             std::abs(map[i] - map[a.col[e]])));
        }
        p.band_interior[s] = bw;
    }

    p.m_gamma_chol = p.op.m_gamma;
    if (!cholesky(p.m_gamma_chol, p.op.n_gamma))
        throw SolverError("Problem: interface mass matrix is not positive definite");
    return p;
}

void ensure_mono_factors(Problem& p)
{
    if (!p.mono_lu.empty()) return;
    const std::size_t nm = p.n_modes();
    p.mono_lu.resize(nm);
    parallel_for(nm, p.workers, [&](std::size_t k) {
        p.mono_lu[k] = factor_block(p.op.full, p.sym.sigma[k], {}, p.op.full.n, p.band_full);
    });
}

void ensure_interior_factors(Problem& p)
{
    if (!p.interior_lu[0].empty() || !p.interior_lu[1].empty()) return;
    const std::size_t nm = p.n_modes();
    for (int s = 0; s < 2; ++s) p.interior_lu[s].resize(nm);
    parallel_for(2 * nm, p.workers, [&](std::size_t i) {
        const int s = static_cast<int>(i / nm);
        const std::size_t k = i % nm;
        p.interior_lu[s][k] = factor_block(p.op.side[s], p.sym.sigma[k], p.interior_map[s],
                                           p.dec.n_interior[s], p.band_interior[s]);
    });
}

void ensure_schur(Problem& p)
{
    if (!p.schur[0].empty() || !p.schur[1].empty()) return;
    ensure_interior_factors(p);
    const std::size_t nm = p.n_modes();
    const std::size_t g = p.op.n_gamma;
    for (int s = 0; s < 2; ++s) p.schur[s].resize(nm);
    parallel_for(2 * nm, p.workers, [&](std::size_t idx) {
        const int s = static_cast<int>(idx / nm);
        const std::size_t k = idx % nm;
        const auto& a = p.op.side[s];
        const auto& map = p.interior_map[s];
        const std::size_t ns = a.n;
        const std::size_t ni = p.dec.n_interior[s];
        DenseZ sm(g, g);
        std::vector<cd> x(ns), y(ns), w(ni);
        for (std::size_t l = 0; l < g; ++l) {
            std::fill(x.begin(), x.end(), cd(0.0, 0.0));
            x[p.dec.gamma_in_side[s][l]] = cd(1.0, 0.0);
            modes::apply_sigma(a, p.sym.sigma[k], x.data(), y.data());
            for (std::size_t i = 0; i < ns; ++i)
                if (map[i] >= 0) w[map[i]] = -y[i];
            if (ni > 0) p.interior_lu[s][k].solve(w.data());
            for (std::size_t i = 0; i < ns; ++i)
                if (map[i] >= 0) x[i] = w[map[i]];
            modes::apply_sigma(a, p.sym.sigma[k], x.data(), y.data());
            for (std::size_t m = 0; m < g; ++m)
                sm.at(m, l) = y[p.dec.gamma_in_side[s][m]];
        }
        p.schur[s][k] = std::move(sm);
    });
}

SpaceTimeField solve_monodomain(Problem& p, const SpaceTimeField& f)
{
    check_field(f, p.op.full.n, "solve_monodomain");
    ensure_mono_factors(p);
    const std::size_t nm = p.n_modes();
    const std::size_t n = p.op.full.n;
    SpaceSpectrum fs = forward_fft(f);
    SpaceSpectrum us(p.grid, n);
    parallel_for(nm, p.workers, [&](std::size_t k) {
        std::vector<cd> fz(n), rhs(n), u(n), r(n);
        fs.mode(k, fz.data());
        modes::apply_mass(p.op.full, fz.data(), rhs.data());
        u = rhs;
        p.mono_lu[k].solve(u.data());
        // direct factorization must deliver the stated relative residual
        modes::apply_sigma(p.op.full, p.sym.sigma[k], u.data(), r.data());
        for (std::size_t i = 0; i < n; ++i) r[i] -= rhs[i];
        const double rn = vec_norm(r.data(), n);
        const double bn = vec_norm(rhs.data(), n);
        if (rn > 1e-12 * std::max(bn, 1e-300))
            throw SolverError("solve_monodomain: mode residual above tolerance",
                              static_cast<long>(k));
        us.set_mode(k, u.data());
    });
    us.mirror_upper();
    return inverse_fft(std::move(us));
}

SpaceTimeField harmonic_extension(Problem& p, int side, const InterfaceField& eta)
{
    if (side != 1 && side != 2) throw ParamError("harmonic_extension: side must be 1 or 2");
    check_field(eta, p.op.n_gamma, "harmonic_extension");
    ensure_interior_factors(p);
    const int s = side - 1;
    const std::size_t nm = p.n_modes();
    const std::size_t ns = p.n_side(side);
    const std::size_t ni = p.dec.n_interior[s];
    const std::size_t g = p.op.n_gamma;
    InterfaceSpectrum es = forward_fft(eta);
    SpaceSpectrum us(p.grid, ns);
    parallel_for(nm, p.workers, [&](std::size_t k) {
        std::vector<cd> ez(g), x(ns, cd(0.0, 0.0)), y(ns), w(ni);
        es.mode(k, ez.data());
        for (std::size_t l = 0; l < g; ++l) x[p.dec.gamma_in_side[s][l]] = ez[l];
        modes::apply_sigma(p.op.side[s], p.sym.sigma[k], x.data(), y.data());
        for (std::size_t i = 0; i < ns; ++i)
            if (p.interior_map[s][i] >= 0) w[p.interior_map[s][i]] = -y[i];
        if (ni > 0) p.interior_lu[s][k].solve(w.data());
        for (std::size_t i = 0; i < ns; ++i)
            if (p.interior_map[s][i] >= 0) x[i] = w[p.interior_map[s][i]];
        us.set_mode(k, x.data());
    });
    us.mirror_upper();
    SpaceTimeField u = inverse_fft(std::move(us));
    // pin the trace rows so T_i F_i eta = eta holds bit-for-bit
    for (std::size_t t = 0; t < p.grid.n_t; ++t)
        for (std::size_t l = 0; l < g; ++l)
            u.at(t, p.dec.gamma_in_side[s][l]) = eta.at(t, l);
    return u;
}

SpaceTimeField interior_lift(Problem& p, int side, const SpaceTimeField& f_side)
{
    if (side != 1 && side != 2) throw ParamError("interior_lift: side must be 1 or 2");
    check_field(f_side, p.n_side(side), "interior_lift");
    ensure_interior_factors(p);
    const int s = side - 1;
    const std::size_t nm = p.n_modes();
    const std::size_t ns = p.n_side(side);
    const std::size_t ni = p.dec.n_interior[s];
    SpaceSpectrum fs = forward_fft(f_side);
    SpaceSpectrum us(p.grid, ns);
    parallel_for(nm, p.workers, [&](std::size_t k) {
        std::vector<cd> fz(ns), rhs(ns), w(ni), x(ns, cd(0.0, 0.0));
        fs.mode(k, fz.data());
        modes::apply_mass(p.op.side[s], fz.data(), rhs.data());
        for (std::size_t i = 0; i < ns; ++i)
            if (p.interior_map[s][i] >= 0) w[p.interior_map[s][i]] = rhs[i];
        if (ni > 0) p.interior_lu[s][k].solve(w.data());
        for (std::size_t i = 0; i < ns; ++i)
            if (p.interior_map[s][i] >= 0) x[i] = w[p.interior_map[s][i]];
        us.set_mode(k, x.data());
    });
    us.mirror_upper();
    SpaceTimeField u = inverse_fft(std::move(us));
    for (std::size_t t = 0; t < p.grid.n_t; ++t)
        for (std::size_t l = 0; l < p.op.n_gamma; ++l)
            u.at(t, p.dec.gamma_in_side[s][l]) = 0.0;
    return u;
}

InterfaceField trace(const Problem& p, int side, const SpaceTimeField& u_side)
{
    if (side != 1 && side != 2) throw ParamError("trace: side must be 1 or 2");
    check_field(u_side, p.n_side(side), "trace");
    const int s = side - 1;
    InterfaceField out(p.grid, p.op.n_gamma);
    for (std::size_t t = 0; t < p.grid.n_t; ++t)
        for (std::size_t l = 0; l < p.op.n_gamma; ++l)
            out.at(t, l) = u_side.at(t, p.dec.gamma_in_side[s][l]);
    return out;
}

InterfaceField flux_functional(Problem& p, int side, const SpaceTimeField& u_side,
                               const SpaceTimeField& f_side)
{
    if (side != 1 && side != 2) throw ParamError("flux_functional: side must be 1 or 2");
    check_field(u_side, p.n_side(side), "flux_functional");
    check_field(f_side, p.n_side(side), "flux_functional");
    const int s = side - 1;
    const std::size_t nm = p.n_modes();
    const std::size_t ns = p.n_side(side);
    const std::size_t g = p.op.n_gamma;
    SpaceSpectrum us = forward_fft(u_side);
    SpaceSpectrum fs = forward_fft(f_side);
    InterfaceSpectrum rs(p.grid, g);
    std::vector<double> interior_rel(nm, 0.0);
    parallel_for(nm, p.workers, [&](std::size_t k) {
        std::vector<cd> uz(ns), fz(ns), au(ns), mf(ns), rz(g);
        us.mode(k, uz.data());
        fs.mode(k, fz.data());
        modes::apply_sigma(p.op.side[s], p.sym.sigma[k], uz.data(), au.data());
        modes::apply_mass(p.op.side[s], fz.data(), mf.data());
        double ri = 0.0;
        for (std::size_t i = 0; i < ns; ++i)
            if (p.interior_map[s][i] >= 0) ri += std::norm(au[i] - mf[i]);
        const double scale = vec_norm(au.data(), ns) + vec_norm(mf.data(), ns);
        interior_rel[k] = scale > 0.0 ? std::sqrt(ri) / scale : 0.0;
        for (std::size_t l = 0; l < g; ++l) {
            const std::size_t i = p.dec.gamma_in_side[s][l];
            rz[l] = au[i] - mf[i];
        }
        rs.set_mode(k, rz.data());
    });
    for (std::size_t k = 0; k < nm; ++k)
        if (interior_rel[k] > 1e-8)
            throw ContractError("flux_functional: u does not solve the interior equations");
    rs.mirror_upper();
    return inverse_fft(std::move(rs));
}

double bilinear_a(const Problem& p, int side, const SpaceTimeField& u, const SpaceTimeField& v)
{
    const PairCsr& a = side == 0 ? p.op.full : p.op.side[side - 1];
    check_field(u, a.n, "bilinear_a");
    check_field(v, a.n, "bilinear_a");
    SpaceSpectrum us = forward_fft(u);
    SpaceSpectrum vs = forward_fft(v);
    const std::size_t nm = p.n_modes();
    const double w = p.grid.parseval_weight();
    std::vector<cd> uz(a.n), vz(a.n), au(a.n);
    double acc = 0.0;
    for (std::size_t k = 0; k < nm; ++k) {
        us.mode(k, uz.data());
        vs.mode(k, vz.data());
        modes::apply_sigma(a, p.sym.sigma[k], uz.data(), au.data());
        double re = 0.0;
        for (std::size_t i = 0; i < a.n; ++i)
            re += vz[i].real() * au[i].real() + vz[i].imag() * au[i].imag();
        acc += us.mult(k) * w * re;
    }
    return acc;
}

SpaceTimeField restrict_side(const Problem& p, int side, const SpaceTimeField& full)
{
    check_field(full, p.op.full.n, "restrict_side");
    const auto& dofs = p.dec.side_dofs[side - 1];
    SpaceTimeField out(p.grid, dofs.size());
    for (std::size_t t = 0; t < p.grid.n_t; ++t)
        for (std::size_t l = 0; l < dofs.size(); ++l) out.at(t, l) = full.at(t, dofs[l]);
    return out;
}

InterfaceField restrict_gamma(const Problem& p, const SpaceTimeField& full)
{
    check_field(full, p.op.full.n, "restrict_gamma");
    InterfaceField out(p.grid, p.op.n_gamma);
    for (std::size_t t = 0; t < p.grid.n_t; ++t)
        for (std::size_t l = 0; l < p.op.n_gamma; ++l)
            out.at(t, l) = full.at(t, p.dec.gamma[l]);
    return out;
}

SpaceTimeField paste(const Problem& p, const SpaceTimeField& u1, const SpaceTimeField& u2)
{
    check_field(u1, p.n_side(1), "paste");
    check_field(u2, p.n_side(2), "paste");
    SpaceTimeField out(p.grid, p.op.full.n);
    for (std::size_t t = 0; t < p.grid.n_t; ++t) {
        for (std::size_t l = 0; l < p.dec.side_dofs[1].size(); ++l)
            out.at(t, p.dec.side_dofs[1][l]) = u2.at(t, l);
        for (std::size_t l = 0; l < p.dec.side_dofs[0].size(); ++l)
            out.at(t, p.dec.side_dofs[0][l]) = u1.at(t, l);
    }
    return out;
}

}  // namespace stdd
