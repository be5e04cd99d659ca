// SPDX-License-Identifier: Apache-2.0

#include "stdd/iterations.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "stdd/errors.hpp"
#include "stdd/norms.hpp"
#include "stdd/parallel.hpp"
#include "stdd/steklov.hpp"

namespace stdd {

using cd = std::complex<double>;
using Clock = std::chrono::steady_clock;

namespace {

double elapsed_s(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::vector<cd>> to_modes(const InterfaceSpectrum& s, std::size_t nm)
{
    std::vector<std::vector<cd>> out(nm);
    for (std::size_t k = 0; k < nm; ++k) out[k] = s.mode(k);
    return out;
}

InterfaceField field_from_modes(const Problem& p, const std::vector<std::vector<cd>>& m)
{
    InterfaceSpectrum s(p.grid, p.op.n_gamma);
    for (std::size_t k = 0; k < p.n_modes(); ++k) s.set_mode(k, m[k].data());
    s.mirror_upper();
    return inverse_fft(std::move(s));
}

// Shared per-run data: sources, chi functionals, the oracle fixed point, and
// the per-mode quadratic forms behind every report column.
struct Core {
    Problem& p;
    std::size_t nm, g;
    double w;
    RieszMap riesz;
    SpaceTimeField f1, f2;
    std::vector<std::vector<cd>> chi1, chi2, chi_sum;
    std::vector<std::vector<cd>> eta_star;
    InterfaceField eta_star_field;

    explicit Core(Problem& prob, const SpaceTimeField& f)
        : p(prob), nm(prob.n_modes()), g(prob.op.n_gamma),
          w(prob.grid.parseval_weight()), riesz(prob),
          f1(restrict_side(prob, 1, f)), f2(restrict_side(prob, 2, f))
    {
        ensure_schur(p);
        const ChiFunctional c1 = chi_functional(p, 1, f1);
        const ChiFunctional c2 = chi_functional(p, 2, f2);
        chi1 = to_modes(c1, nm);
        chi2 = to_modes(c2, nm);
        chi_sum.resize(nm);
        for (std::size_t k = 0; k < nm; ++k) {
            chi_sum[k].resize(g);
            for (std::size_t i = 0; i < g; ++i) chi_sum[k][i] = chi1[k][i] + chi2[k][i];
        }
        eta_star = to_modes(solve_sp_direct_spectrum(p, c1, c2, 0.0), nm);
        eta_star_field = field_from_modes(p, eta_star);
    }

    double mult(std::size_t k) const { return (k == 0 || k == nm - 1) ? 1.0 : 2.0; }

    // squared quads of the subdomain error F_side(d) in the L2(x)H1 and W forms
    void u_error_quads(int side, std::size_t k, const std::vector<cd>& d,
                       double& l2h1_sq, double& w_sq) const
    {
        const int s = side - 1;
        const auto& a = p.op.side[s];
        const std::size_t ns = a.n;
        const std::size_t ni = p.dec.n_interior[s];
        std::vector<cd> x(ns, cd(0.0, 0.0)), y(ns), wk(ni);
        for (std::size_t l = 0; l < g; ++l) x[p.dec.gamma_in_side[s][l]] = d[l];
        modes::apply_sigma(a, p.sym.sigma[k], x.data(), y.data());
        for (std::size_t i = 0; i < ns; ++i)
            if (p.interior_map[s][i] >= 0) wk[p.interior_map[s][i]] = -y[i];
        if (ni > 0) p.interior_lu[s][k].solve(wk.data());
        for (std::size_t i = 0; i < ns; ++i)
            if (p.interior_map[s][i] >= 0) x[i] = wk[p.interior_map[s][i]];
        const double qk = modes::quad_k(a, x.data());
        const double qm = modes::quad_m(a, x.data());
        const double xi = p.sym.xi[k];
        l2h1_sq = qk + qm;
        w_sq = qk + std::sqrt(1.0 + xi * xi) * qm;
    }
};

struct ErrAccum {
    double mg[2]{}, z[2]{}, lam[2]{}, uh[2]{}, uw[2]{}, pr = 0.0;
};

// One report row from the per-side interface errors d1, d2 (modes 0..n/2)
// and a per-mode residual functional for the pr column.
template <class PrFn>
IterationRecord make_record(const Core& core, int iter,
                            const std::vector<std::vector<cd>>& d1,
                            const std::vector<std::vector<cd>>& d2, PrFn&& pr_fn,
                            double update_j, double seconds, int workers)
{
    const std::size_t nm = core.nm;
    const auto& ql = core.p.op.q_lambda[0];
    std::vector<ErrAccum> acc(nm);
    parallel_for(nm, workers, [&](std::size_t k) {
        ErrAccum a;
        const std::vector<cd>* d[2] = {&d1[k], &d2[k]};
        const double xi = core.p.sym.xi[k];
        const double zw = std::sqrt(1.0 + xi * xi);
        for (int s = 0; s < 2; ++s) {
            const double qm = core.riesz.quad(d[s]->data());
            const double qlam = quad_dense(ql, core.g, d[s]->data());
            a.mg[s] = qm;
            a.lam[s] = qlam;
            a.z[s] = zw * qm + qlam;
            core.u_error_quads(s + 1, k, *d[s], a.uh[s], a.uw[s]);
        }
        a.pr = pr_fn(k);
        acc[k] = a;
    });
    double mg[2]{}, z[2]{}, lam[2]{}, uh[2]{}, uw[2]{}, pr = 0.0;
    for (std::size_t k = 0; k < nm; ++k) {
        const double mw = core.mult(k) * core.w;
        for (int s = 0; s < 2; ++s) {
            mg[s] += mw * acc[k].mg[s];
            z[s] += mw * acc[k].z[s];
            lam[s] += mw * acc[k].lam[s];
            uh[s] += mw * acc[k].uh[s];
            uw[s] += mw * acc[k].uw[s];
        }
        pr += mw * acc[k].pr;
    }
    IterationRecord r;
    r.iter = iter;
    r.err_l2gamma = std::sqrt(mg[0]) + std::sqrt(mg[1]);
    r.err_z = std::sqrt(z[0]) + std::sqrt(z[1]);
    r.err_l2lambda = std::sqrt(lam[0]) + std::sqrt(lam[1]);
    r.err_l2h1_u = std::sqrt(uh[0]) + std::sqrt(uh[1]);
    r.err_w_u = std::sqrt(uw[0]) + std::sqrt(uw[1]);
    r.pr_residual = std::sqrt(pr);
    r.update_j = update_j;
    r.seconds = seconds;
    return r;
}

std::vector<std::vector<cd>> diff_modes(const std::vector<std::vector<cd>>& a,
                                        const std::vector<std::vector<cd>>& b)
{
    std::vector<std::vector<cd>> d(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        d[k].resize(a[k].size());
        for (std::size_t i = 0; i < a[k].size(); ++i) d[k][i] = a[k][i] - b[k][i];
    }
    return d;
}

// Peaceman-Rachford core; `modified` selects the H_Gamma^{phi*}-scaled
// operators (per mode the scalar e^{-i phi sgn xi}). With phi == 0 the
// scaling is skipped entirely, so the plain method is the same code path
// bit for bit.
IterationReport pr_run(Problem& p, const IterationConfig& cfg, const SpaceTimeField& f,
                       bool modified)
{
    if (!(cfg.s > 0.0)) throw ParamError("robin_robin: s must be > 0");
    if (modified && !(cfg.phi >= 0.0 && cfg.phi < 1.5707963267948966))
        throw ParamError("modified_robin_robin: phi must lie in [0, pi/2)");
    const double phi = modified ? cfg.phi : 0.0;
    const bool scale_modes = phi != 0.0;

    const auto t0 = Clock::now();
    Core core(p, f);
    const std::size_t nm = core.nm, g = core.g;

    // transpose of the discrete H_Gamma^phi: conj(cos phi + i sin phi sgn);
    // degenerates to cos(phi) at the sgn = 0 modes where H annihilates
    std::vector<cd> cmod(nm, cd(1.0, 0.0));
    if (scale_modes)
        for (std::size_t k = 0; k < nm; ++k)
            cmod[k] = cd(std::cos(phi), -std::sin(phi) * p.sym.sgn[k]);

    // per-mode dense factors of s*M_gamma + c*S_i and the c-scaled chi sums
    std::vector<DenseLU> lu1(nm), lu2(nm);
    std::vector<std::vector<cd>> chi_c(nm);
    parallel_for(nm, p.workers, [&](std::size_t k) {
        for (int s = 0; s < 2; ++s) {
            DenseZ a(g, g);
            for (std::size_t j = 0; j < g; ++j)
                for (std::size_t i = 0; i < g; ++i) {
                    cd v = p.schur[s][k].at(i, j);
                    if (scale_modes) v *= cmod[k];
                    a.at(i, j) = v + cfg.s * p.op.m_gamma[j * g + i];
                }
            (s == 0 ? lu1[k] : lu2[k]).factor(std::move(a));
        }
        chi_c[k] = core.chi_sum[k];
        if (scale_modes)
            for (auto& v : chi_c[k]) v *= cmod[k];
    });

    // state
    const InterfaceField guess = initial_interface_guess(p, cfg, core.eta_star_field);
    auto e2 = to_modes(forward_fft(guess), nm);
    auto e1 = e2;

    const auto pr_fn = [&](const std::vector<std::vector<cd>>& d2) {
        return [&, d2 = &d2](std::size_t k) {
            std::vector<cd> y(g), t(g);
            p.schur[1][k].matvec((*d2)[k].data(), y.data());
            if (scale_modes)
                for (auto& v : y) v *= cmod[k];
            core.riesz.apply((*d2)[k].data(), t.data());
            for (std::size_t i = 0; i < g; ++i) t[i] = cfg.s * t[i] - y[i];
            return core.riesz.quad_inv(t.data());
        };
    };

    IterationReport rep;
    rep.history.push_back(make_record(core, 0, diff_modes(e1, core.eta_star),
                                      diff_modes(e2, core.eta_star),
                                      pr_fn(diff_modes(e2, core.eta_star)), 0.0,
                                      elapsed_s(t0), p.workers));

    std::vector<double> upd(nm, 0.0);
    for (int n = 1; n <= cfg.max_iter; ++n) {
        parallel_for(nm, p.workers, [&](std::size_t k) {
            std::vector<cd> y(g), rhs(g), mg(g);
            // (s J + c S_1) e1 = (s J - c S_2) e2 + c (chi_1 + chi_2)
            p.schur[1][k].matvec(e2[k].data(), y.data());
            if (scale_modes)
                for (auto& v : y) v *= cmod[k];
            core.riesz.apply(e2[k].data(), mg.data());
            for (std::size_t i = 0; i < g; ++i) rhs[i] = cfg.s * mg[i] - y[i] + chi_c[k][i];
            lu1[k].solve(rhs.data());
            e1[k] = rhs;
            // (s J + c S_2) e2' = (s J - c S_1) e1 + c (chi_1 + chi_2)
            p.schur[0][k].matvec(e1[k].data(), y.data());
            if (scale_modes)
                for (auto& v : y) v *= cmod[k];
            core.riesz.apply(e1[k].data(), mg.data());
            for (std::size_t i = 0; i < g; ++i) rhs[i] = cfg.s * mg[i] - y[i] + chi_c[k][i];
            lu2[k].solve(rhs.data());
            std::vector<cd> delta(g);
            for (std::size_t i = 0; i < g; ++i) delta[i] = rhs[i] - e2[k][i];
            upd[k] = core.riesz.quad(delta.data());
            e2[k] = rhs;
        });
        double upd_sq = 0.0;
        for (std::size_t k = 0; k < nm; ++k) upd_sq += core.mult(k) * core.w * upd[k];
        const double update_j = std::sqrt(upd_sq);

        const auto d2 = diff_modes(e2, core.eta_star);
        rep.history.push_back(make_record(core, n, diff_modes(e1, core.eta_star), d2,
                                          pr_fn(d2), update_j, elapsed_s(t0), p.workers));
        rep.iterations = n;

        const auto& cur = rep.history.back();
        const auto& prev = rep.history[rep.history.size() - 2];
        if (cur.pr_residual > prev.pr_residual + 1e-12 * rep.history.front().pr_residual
            && rep.warnings.empty())
            rep.warnings.push_back("transformed residual increased at iteration "
                                   + std::to_string(n));
        if (update_j <= cfg.tol) {
            rep.converged = true;
            break;
        }
    }
    rep.seconds_total = elapsed_s(t0);
    rep.eta1 = field_from_modes(p, e1);
    rep.eta2 = field_from_modes(p, e2);
    return rep;
}

// Dirichlet-Neumann / Neumann-Neumann preconditioned fixed points.
IterationReport fixed_point_run(Problem& p, const IterationConfig& cfg,
                                const SpaceTimeField& f, bool neumann_neumann)
{
    if (!neumann_neumann && !(cfg.s0 > 0.0 && cfg.s0 < 1.0))
        throw ParamError("dirichlet_neumann: s0 must lie in (0, 1)");
    if (neumann_neumann && !(cfg.s1 > 0.0 && cfg.s2 > 0.0))
        throw ParamError("neumann_neumann: s1 and s2 must be > 0");

    const auto t0 = Clock::now();
    Core core(p, f);
    const std::size_t nm = core.nm, g = core.g;

    std::vector<DenseLU> lu_s1(nm), lu_s2(nm);
    parallel_for(nm, p.workers, [&](std::size_t k) {
        if (neumann_neumann) lu_s1[k].factor(p.schur[0][k]);
        lu_s2[k].factor(p.schur[1][k]);
    });

    const InterfaceField guess = initial_interface_guess(p, cfg, core.eta_star_field);
    auto eta = to_modes(forward_fft(guess), nm);
    std::vector<std::vector<cd>> lam1(nm, std::vector<cd>(g)), lam2(nm, std::vector<cd>(g));

    // natural residual || S eta - chi ||_{J^{-1}} fills the pr column here
    const auto residual_fn = [&](const std::vector<std::vector<cd>>& d) {
        return [&, d = &d](std::size_t k) {
            std::vector<cd> y(g), r(g);
            p.schur[0][k].matvec((*d)[k].data(), r.data());
            p.schur[1][k].matvec((*d)[k].data(), y.data());
            for (std::size_t i = 0; i < g; ++i) r[i] += y[i];
            return core.riesz.quad_inv(r.data());
        };
    };

    IterationReport rep;
    {
        const auto d = diff_modes(eta, core.eta_star);
        rep.history.push_back(make_record(core, 0, d, d, residual_fn(d), 0.0,
                                          elapsed_s(t0), p.workers));
    }

    std::vector<double> upd(nm, 0.0);
    for (int n = 1; n <= cfg.max_iter; ++n) {
        parallel_for(nm, p.workers, [&](std::size_t k) {
            std::vector<cd> r(g), y(g);
            p.schur[0][k].matvec(eta[k].data(), r.data());
            p.schur[1][k].matvec(eta[k].data(), y.data());
            for (std::size_t i = 0; i < g; ++i) r[i] = core.chi_sum[k][i] - r[i] - y[i];
            std::vector<cd> delta(g);
            if (neumann_neumann) {
                lam1[k] = r;
                lu_s1[k].solve(lam1[k].data());
                lam2[k] = r;
                lu_s2[k].solve(lam2[k].data());
                for (std::size_t i = 0; i < g; ++i)
                    delta[i] = cfg.s1 * lam1[k][i] + cfg.s2 * lam2[k][i];
            } else {
                lu_s2[k].solve(r.data());
                for (std::size_t i = 0; i < g; ++i) delta[i] = cfg.s0 * r[i];
            }
            for (std::size_t i = 0; i < g; ++i) eta[k][i] += delta[i];
            upd[k] = core.riesz.quad(delta.data());
        });
        double upd_sq = 0.0;
        for (std::size_t k = 0; k < nm; ++k) upd_sq += core.mult(k) * core.w * upd[k];
        const double update_j = std::sqrt(upd_sq);

        const auto d = diff_modes(eta, core.eta_star);
        rep.history.push_back(make_record(core, n, d, d, residual_fn(d), update_j,
                                          elapsed_s(t0), p.workers));
        rep.iterations = n;

        if (update_j <= cfg.tol) {
            rep.converged = true;
            break;
        }
        // error growth by more than 10x over 20 iterations counts as divergence
        if (n >= 20) {
            const double now = rep.history.back().err_l2gamma;
            const double before = rep.history[rep.history.size() - 21].err_l2gamma;
            if (now > 10.0 * before && before > 0.0) {
                rep.diverged = true;
                rep.warnings.push_back("diverging interface error at iteration "
                                       + std::to_string(n));
                break;
            }
        }
    }
    rep.seconds_total = elapsed_s(t0);
    rep.eta1 = field_from_modes(p, eta);
    rep.eta2 = rep.eta1;
    if (neumann_neumann) {
        rep.lambda1 = field_from_modes(p, lam1);
        rep.lambda2 = field_from_modes(p, lam2);
    }
    return rep;
}

}  // namespace

InterfaceField initial_interface_guess(Problem& p, const IterationConfig& cfg,
                                       const InterfaceField& eta_exact)
{
    switch (cfg.initial_guess) {
        case InitialGuess::zero:
            return InterfaceField(p.grid, p.op.n_gamma);
        case InitialGuess::exact:
            return eta_exact;
        case InitialGuess::random: {
            InterfaceField out(p.grid, p.op.n_gamma);
            std::mt19937_64 rng(cfg.seed);
            std::normal_distribution<double> normal(0.0, 1.0);
            for (auto& v : out.v) v = normal(rng);
            return out;
        }
    }
    throw ParamError("initial_interface_guess: unknown kind");
}

IterationReport robin_robin_run(Problem& p, const IterationConfig& cfg, const SpaceTimeField& f)
{
    return pr_run(p, cfg, f, false);
}

IterationReport modified_robin_robin_run(Problem& p, const IterationConfig& cfg,
                                         const SpaceTimeField& f)
{
    return pr_run(p, cfg, f, true);
}

IterationReport dirichlet_neumann_run(Problem& p, const IterationConfig& cfg,
                                      const SpaceTimeField& f)
{
    return fixed_point_run(p, cfg, f, false);
}

IterationReport neumann_neumann_run(Problem& p, const IterationConfig& cfg,
                                    const SpaceTimeField& f)
{
    return fixed_point_run(p, cfg, f, true);
}

SubdomainFormResult robin_robin_subdomain_form(Problem& p, const IterationConfig& cfg,
                                               const SpaceTimeField& f, int n_iters)
{
    if (!(cfg.s > 0.0)) throw ParamError("robin_robin_subdomain_form: s must be > 0");
    ensure_interior_factors(p);
    ensure_schur(p);
    Core core(p, f);
    const std::size_t nm = core.nm, g = core.g;

    // per-mode Robin subdomain factors A_i + s E^T M_gamma E; the gamma block
    // is tridiagonal inside a contiguous index range, so the bandwidth of the
    // subdomain matrix is unchanged
    std::array<std::vector<BandLU>, 2> rob;
    std::array<std::size_t, 2> bw{p.op.side[0].bandwidth(), p.op.side[1].bandwidth()};
    for (int s = 0; s < 2; ++s) rob[s].resize(nm);
    parallel_for(2 * nm, p.workers, [&](std::size_t idx) {
        const int s = static_cast<int>(idx / nm);
        const std::size_t k = idx % nm;
        const auto& a = p.op.side[s];
        BandLU lu;
        lu.init(a.n, bw[s], bw[s]);
        for (std::size_t i = 0; i < a.n; ++i)
            for (int e = a.ptr[i]; e < a.ptr[i + 1]; ++e)
                lu.at(i, a.col[e]) = cd(a.kv[e], 0.0) + p.sym.sigma[k] * a.mv[e];
        for (std::size_t lj = 0; lj < g; ++lj)
            for (std::size_t li = 0; li < g; ++li) {
                const double m = p.op.m_gamma[lj * g + li];
                if (m != 0.0)
                    lu.at(p.dec.gamma_in_side[s][li], p.dec.gamma_in_side[s][lj]) += cfg.s * m;
            }
        lu.factor();
        rob[s][k] = std::move(lu);
    });

    SpaceSpectrum f1s = forward_fft(core.f1);
    SpaceSpectrum f2s = forward_fft(core.f2);
    const InterfaceField guess = initial_interface_guess(p, cfg, core.eta_star_field);
    auto eta2 = to_modes(forward_fft(guess), nm);

    const std::size_t ns1 = p.n_side(1), ns2 = p.n_side(2);
    std::vector<std::vector<cd>> u1(nm, std::vector<cd>(ns1, cd(0.0, 0.0)));
    std::vector<std::vector<cd>> u2(nm, std::vector<cd>(ns2, cd(0.0, 0.0)));

    parallel_for(nm, p.workers, [&](std::size_t k) {
        // u_2^0 = F_2 eta_2^0 + G_2 f_2
        const auto& a = p.op.side[1];
        std::vector<cd> fz(ns2), mf(ns2), y(ns2), w(p.dec.n_interior[1]);
        f2s.mode(k, fz.data());
        modes::apply_mass(a, fz.data(), mf.data());
        std::vector<cd>& x = u2[k];
        for (std::size_t l = 0; l < g; ++l) x[p.dec.gamma_in_side[1][l]] = eta2[k][l];
        modes::apply_sigma(a, p.sym.sigma[k], x.data(), y.data());
        for (std::size_t i = 0; i < ns2; ++i)
            if (p.interior_map[1][i] >= 0) w[p.interior_map[1][i]] = mf[i] - y[i];
        if (!w.empty()) p.interior_lu[1][k].solve(w.data());
        for (std::size_t i = 0; i < ns2; ++i)
            if (p.interior_map[1][i] >= 0) x[i] = w[p.interior_map[1][i]];
    });

    for (int n = 0; n < n_iters; ++n) {
        parallel_for(nm, p.workers, [&](std::size_t k) {
            std::vector<cd> f1z(ns1), f2z(ns2), mf1(ns1), mf2(ns2), y1(ns1), y2(ns2);
            std::vector<cd> flux(g), etag(g), mge(g);
            f1s.mode(k, f1z.data());
            f2s.mode(k, f2z.data());
            modes::apply_mass(p.op.side[0], f1z.data(), mf1.data());
            modes::apply_mass(p.op.side[1], f2z.data(), mf2.data());

            // side 1 Robin solve with side-2 data
            modes::apply_sigma(p.op.side[1], p.sym.sigma[k], u2[k].data(), y2.data());
            for (std::size_t l = 0; l < g; ++l) {
                const std::size_t i = p.dec.gamma_in_side[1][l];
                flux[l] = y2[i] - mf2[i];
                etag[l] = u2[k][i];
            }
            core.riesz.apply(etag.data(), mge.data());
            std::vector<cd> rhs1 = mf1;
            for (std::size_t l = 0; l < g; ++l)
                rhs1[p.dec.gamma_in_side[0][l]] += cfg.s * mge[l] - flux[l];
            rob[0][k].solve(rhs1.data());
            u1[k] = rhs1;

            // side 2 Robin solve with the fresh side-1 data
            modes::apply_sigma(p.op.side[0], p.sym.sigma[k], u1[k].data(), y1.data());
            for (std::size_t l = 0; l < g; ++l) {
                const std::size_t i = p.dec.gamma_in_side[0][l];
                flux[l] = y1[i] - mf1[i];
                etag[l] = u1[k][i];
            }
            core.riesz.apply(etag.data(), mge.data());
            std::vector<cd> rhs2 = mf2;
            for (std::size_t l = 0; l < g; ++l)
                rhs2[p.dec.gamma_in_side[1][l]] += cfg.s * mge[l] - flux[l];
            rob[1][k].solve(rhs2.data());
            u2[k] = rhs2;
        });
    }

    SubdomainFormResult out;
    SpaceSpectrum s1(p.grid, ns1), s2(p.grid, ns2);
    for (std::size_t k = 0; k < nm; ++k) {
        s1.set_mode(k, u1[k].data());
        s2.set_mode(k, u2[k].data());
    }
    s1.mirror_upper();
    s2.mirror_upper();
    out.u1 = inverse_fft(std::move(s1));
    out.u2 = inverse_fft(std::move(s2));
    out.eta1 = trace(p, 1, out.u1);
    out.eta2 = trace(p, 2, out.u2);
    return out;
}

}  // namespace stdd
