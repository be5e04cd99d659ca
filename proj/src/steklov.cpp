// SPDX-License-Identifier: Apache-2.0

#include "stdd/steklov.hpp"

#include <cmath>

#include "stdd/errors.hpp"
#include "stdd/norms.hpp"
#include "stdd/parallel.hpp"

namespace stdd {

using cd = std::complex<double>;

const std::vector<DenseZ>& steklov_blocks(Problem& p, int side)
{
    if (side != 1 && side != 2) throw ParamError("steklov_blocks: side must be 1 or 2");
    ensure_schur(p);
    return p.schur[side - 1];
}

InterfaceField apply_steklov(Problem& p, int side, const InterfaceField& eta)
{
    const auto& blocks = steklov_blocks(p, side);
    check_field(eta, p.op.n_gamma, "apply_steklov");
    InterfaceSpectrum es = forward_fft(eta);
    InterfaceSpectrum rs(p.grid, p.op.n_gamma);
    parallel_for(p.n_modes(), p.workers, [&](std::size_t k) {
        std::vector<cd> x(p.op.n_gamma), y(p.op.n_gamma);
        es.mode(k, x.data());
        blocks[k].matvec(x.data(), y.data());
        rs.set_mode(k, y.data());
    });
    rs.mirror_upper();
    return inverse_fft(std::move(rs));
}

InterfaceField apply_steklov_matrix_free(Problem& p, int side, const InterfaceField& eta)
{
    SpaceTimeField u = harmonic_extension(p, side, eta);
    SpaceTimeField zero(p.grid, p.n_side(side));
    return flux_functional(p, side, u, zero);
}

ChiFunctional chi_functional(Problem& p, int side, const SpaceTimeField& f_side)
{
    if (side != 1 && side != 2) throw ParamError("chi_functional: side must be 1 or 2");
    check_field(f_side, p.n_side(side), "chi_functional");
    ensure_interior_factors(p);
    const int s = side - 1;
    const std::size_t ns = p.n_side(side);
    const std::size_t ni = p.dec.n_interior[s];
    const std::size_t g = p.op.n_gamma;
    SpaceSpectrum fs = forward_fft(f_side);
    ChiFunctional cs(p.grid, g);
    parallel_for(p.n_modes(), p.workers, [&](std::size_t k) {
        std::vector<cd> fz(ns), mf(ns), w(ni), x(ns, cd(0.0, 0.0)), ax(ns), out(g);
        fs.mode(k, fz.data());
        modes::apply_mass(p.op.side[s], fz.data(), mf.data());
        for (std::size_t i = 0; i < ns; ++i)
            if (p.interior_map[s][i] >= 0) w[p.interior_map[s][i]] = mf[i];
        if (ni > 0) p.interior_lu[s][k].solve(w.data());
        for (std::size_t i = 0; i < ns; ++i)
            if (p.interior_map[s][i] >= 0) x[i] = w[p.interior_map[s][i]];
        modes::apply_sigma(p.op.side[s], p.sym.sigma[k], x.data(), ax.data());
        for (std::size_t l = 0; l < g; ++l) {
            const std::size_t i = p.dec.gamma_in_side[s][l];
            out[l] = mf[i] - ax[i];
        }
        cs.set_mode(k, out.data());
    });
    cs.mirror_upper();
    return cs;
}

InterfaceField chi_field(Problem& p, int side, const SpaceTimeField& f_side)
{
    return inverse_fft(chi_functional(p, side, f_side));
}

InterfaceSpectrum solve_sp_direct_spectrum(Problem& p, const ChiFunctional& chi1,
                                           const ChiFunctional& chi2, double s)
{
    if (s < 0.0) throw ParamError("solve_sp_direct: s must be >= 0");
    ensure_schur(p);
    const std::size_t g = p.op.n_gamma;
    InterfaceSpectrum eta(p.grid, g);
    parallel_for(p.n_modes(), p.workers, [&](std::size_t k) {
        DenseZ a = p.schur[0][k] + p.schur[1][k];
        if (s > 0.0)
            for (std::size_t j = 0; j < g; ++j)
                for (std::size_t i = 0; i < g; ++i)
                    a.at(i, j) += s * p.op.m_gamma[j * g + i];
        std::vector<cd> rhs(g), c1(g), c2(g);
        chi1.mode(k, c1.data());
        chi2.mode(k, c2.data());
        for (std::size_t i = 0; i < g; ++i) rhs[i] = c1[i] + c2[i];
        DenseLU lu(std::move(a));
        lu.solve(rhs.data());
        eta.set_mode(k, rhs.data());
    });
    eta.mirror_upper();
    return eta;
}

InterfaceField solve_sp_direct(Problem& p, const ChiFunctional& chi1,
                               const ChiFunctional& chi2, double s)
{
    return inverse_fft(solve_sp_direct_spectrum(p, chi1, chi2, s));
}

double cayley_contraction_check(Problem& p, double s, std::size_t k)
{
    if (!(s > 0.0)) throw ParamError("cayley_contraction_check: s must be > 0");
    if (k >= p.n_modes()) throw ParamError("cayley_contraction_check: mode out of range");
    ensure_schur(p);
    const std::size_t g = p.op.n_gamma;
    DenseZ sm(g, g);
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t i = 0; i < g; ++i)
            sm.at(i, j) = cd(s * p.op.m_gamma[j * g + i], 0.0);

    // (sM - S)(sM + S)^{-1} assembled explicitly; g is small
    const auto cayley = [&](const DenseZ& sk) {
        DenseZ minus = sm - sk;
        DenseLU lu(sm + sk);
        DenseZ inv(g, g);
        for (std::size_t j = 0; j < g; ++j) inv.at(j, j) = cd(1.0, 0.0);
        lu.solve(inv);
        return DenseZ::matmul(minus, inv);
    };
    const DenseZ t = DenseZ::matmul(cayley(p.schur[0][k]), cayley(p.schur[1][k]));
    // norm measured in the M^{-1} geometry of the transformed residual:
    // || L^{-1} T L ||_2 with M = L L^T
    const DenseZ b = weighted_similarity(p.m_gamma_chol, g, t);
    return max_singular_value(b);
}

}  // namespace stdd
