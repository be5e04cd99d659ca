// SPDX-License-Identifier: Apache-2.0

#include "stdd/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "stdd/errors.hpp"
#include "stdd/fractime.hpp"
#include "stdd/manufactured.hpp"
#include "stdd/norms.hpp"
#include "stdd/steklov.hpp"

namespace stdd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Suite {
    std::ostringstream log;
    bool pass = true;

    void check(const std::string& name, double margin, double limit)
    {
        const bool ok = margin <= limit;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-52s %11.3e (limit %.1e) %s\n", name.c_str(), margin,
                      limit, ok ? "ok" : "FAIL");
        log << buf;
        pass = pass && ok;
    }
    void check_at_least(const std::string& name, double value, double floor)
    {
        const bool ok = value >= floor;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-52s %11.3e (floor %.1e) %s\n", name.c_str(), value,
                      floor, ok ? "ok" : "FAIL");
        log << buf;
        pass = pass && ok;
    }
    void note(const std::string& line) { log << line << "\n"; }
};

double l2(const TimeSignal& v) { return hs_norm(v, 0.0); }

void fractime_suite(Suite& s)
{
    const auto t0 = Clock::now();
    for (const std::size_t n_t : {std::size_t(64), std::size_t(256)}) {
        const TimeGrid grid = TimeGrid::make(n_t, 8.0);
        double worst1 = 0.0, worst2 = 0.0, worst3 = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const std::uint64_t seed = 1000 * n_t + trial;
            const TimeSignal v = random_band_limited(grid, seed);
            const TimeSignal w = random_band_limited(grid, seed + 7919);

            // identity 1: d+^{1/2} v = -d-^{1/2} H v
            TimeSignal lhs = half_derivative(v, HalfDerivativeBranch::plus);
            const TimeSignal rhs = half_derivative(hilbert(v), HalfDerivativeBranch::minus);
            TimeSignal diff = lhs;
            for (std::size_t j = 0; j < grid.n_t; ++j) diff.values[j] += rhs.values[j];
            worst1 = std::max(worst1, l2(diff) / l2(v));

            // identity 2: (d+^{1/2} v, d-^{1/2} v) = 0
            const TimeSignal minus = half_derivative(v, HalfDerivativeBranch::minus);
            worst2 = std::max(worst2, std::abs(l2_inner(lhs, minus))
                                          / (hs_norm(v, 0.5) * hs_norm(v, 0.5)));

            // identity 3: (d_t v, w) = (d+^{1/2} v, d-^{1/2} w)
            const TimeSignal dv = spectral_derivative(v);
            const double a = l2_inner(dv, w);
            const double b = l2_inner(half_derivative(v, HalfDerivativeBranch::plus),
                                      half_derivative(w, HalfDerivativeBranch::minus));
            worst3 = std::max(worst3, std::abs(a - b) / (l2(dv) * l2(w)));
        }
        char name[64];
        std::snprintf(name, sizeof(name), "half-derivative flip identity, n_t=%zu", n_t);
        s.check(name, worst1, 1e-10);
        std::snprintf(name, sizeof(name), "half-derivative orthogonality, n_t=%zu", n_t);
        s.check(name, worst2, 1e-10);
        std::snprintf(name, sizeof(name), "fractional integration by parts, n_t=%zu", n_t);
        s.check(name, worst3, 1e-10);
    }
    const double sec = seconds_since(t0);
    s.check("fractional identity suite runtime [s]", sec, 5.0);
}

void coercivity_suite(Suite& s, int workers)
{
    const auto t0 = Clock::now();
    const double phi = 0.1;
    SpaceMesh mesh = build_mesh(2, 1.0, 1.0, 16, 16);
    Problem p = Problem::build(std::move(mesh), 0.5, TimeGrid::make(64, 8.0), workers);
    ensure_schur(p);

    std::mt19937_64 rng(42);
    std::normal_distribution<double> normal(0.0, 1.0);

    double min_a = 1e300, min_sp = 1e300;
    for (int side = 1; side <= 2; ++side) {
        for (int trial = 0; trial < 100; ++trial) {
            SpaceTimeField v(p.grid, p.n_side(side));
            for (auto& x : v.v) x = normal(rng);
            const double num = bilinear_a(p, side, v, apply_h_phi(v, phi));
            const double den = norm_w(p, side, v);
            min_a = std::min(min_a, num / (den * den));
        }
        for (int trial = 0; trial < 100; ++trial) {
            InterfaceField eta(p.grid, p.op.n_gamma);
            for (auto& x : eta.v) x = normal(rng);
            const InterfaceField sn = apply_steklov(p, side, eta);
            const InterfaceField hn = apply_h_phi(eta, phi);
            // dual pairing <S eta, H^phi eta> = dt * sum_t r(t) . mu(t)
            double pair = 0.0;
            for (std::size_t t = 0; t < p.grid.n_t; ++t)
                for (std::size_t l = 0; l < p.op.n_gamma; ++l)
                    pair += sn.at(t, l) * hn.at(t, l);
            pair *= p.grid.dt;
            const double den = norm_z(p, eta);
            min_sp = std::min(min_sp, pair / (den * den));
        }
    }
    s.check_at_least("min a_i(v, H^phi v) / ||v||_W^2 (phi=0.1)", min_a, 1e-6);
    s.check_at_least("min <S_i eta, H^phi eta> / ||eta||_Z^2 (phi=0.1)", min_sp, 1e-6);
    s.check("coercive-equivalence suite runtime [s]", seconds_since(t0), 60.0);
}

void equivalence_suite(Suite& s, int workers)
{
    const auto t0 = Clock::now();
    SpaceMesh mesh = build_mesh(2, 1.0, 1.0, 32, 32);
    Problem p = Problem::build(std::move(mesh), 0.5, TimeGrid::make(64, 8.0), workers);
    const ManufacturedCase mc = manufactured_case(p.mesh, p.grid, "bump-sine");

    const SpaceTimeField u = solve_monodomain(p, mc.f);
    const InterfaceField eta_mono = restrict_gamma(p, u);

    const SpaceTimeField f1 = restrict_side(p, 1, mc.f);
    const SpaceTimeField f2 = restrict_side(p, 2, mc.f);
    const InterfaceField eta_sp = solve_sp_direct(p, chi_functional(p, 1, f1),
                                                  chi_functional(p, 2, f2), 0.0);

    SpaceTimeField u1 = harmonic_extension(p, 1, eta_sp);
    const SpaceTimeField g1 = interior_lift(p, 1, f1);
    for (std::size_t i = 0; i < u1.v.size(); ++i) u1.v[i] += g1.v[i];
    SpaceTimeField u2 = harmonic_extension(p, 2, eta_sp);
    const SpaceTimeField g2 = interior_lift(p, 2, f2);
    for (std::size_t i = 0; i < u2.v.size(); ++i) u2.v[i] += g2.v[i];
    const SpaceTimeField u_dd = paste(p, u1, u2);

    InterfaceField deta = eta_mono;
    for (std::size_t i = 0; i < deta.v.size(); ++i) deta.v[i] -= eta_sp.v[i];
    SpaceTimeField du = u;
    for (std::size_t i = 0; i < du.v.size(); ++i) du.v[i] -= u_dd.v[i];
    const InterfaceField eta_dd = restrict_gamma(p, u_dd);
    InterfaceField deta2 = eta_dd;
    for (std::size_t i = 0; i < deta2.v.size(); ++i) deta2.v[i] -= eta_mono.v[i];

    s.check("monodomain trace vs interface solve, L2(Gamma)", norm_l2_gamma(p, deta), 1e-10);
    s.check("pasted trace vs monodomain trace, L2(Gamma)", norm_l2_gamma(p, deta2), 1e-10);
    s.check("pasted field vs monodomain field, L2xH1", norm_l2h1(p, 0, du), 1e-10);
    s.check("triple equivalence runtime [s]", seconds_since(t0), 120.0);
}

void cayley_suite(Suite& s, int workers)
{
    SpaceMesh mesh = build_mesh(2, 1.0, 1.0, 32, 32);
    Problem p = Problem::build(std::move(mesh), 0.5, TimeGrid::make(64, 8.0), workers);
    ensure_schur(p);
    double worst = 0.0;
    double zero_mode_worst = 0.0;
    for (const double sv : {0.5, 1.0, 2.0}) {
        for (std::size_t k = 0; k < p.n_modes(); ++k) {
            const double norm = cayley_contraction_check(p, sv, k);
            worst = std::max(worst, norm);
            if (k == 0) zero_mode_worst = std::max(zero_mode_worst, norm);
        }
    }
    s.check("max Cayley composition norm, s in {0.5,1,2}", worst, 1.0 + 1e-12);
    s.check("Cayley norm at the zero mode", zero_mode_worst, 1.0 - 1e-12);
}

}  // namespace

VerifyOutcome verify_suite(const std::string& suite, int workers)
{
    Suite s;
    bool known = false;
    if (suite == "fractime" || suite == "all") {
        s.note("[fractime]");
        fractime_suite(s);
        known = true;
    }
    if (suite == "coercivity" || suite == "all") {
        s.note("[coercivity]");
        coercivity_suite(s, workers);
        known = true;
    }
    if (suite == "equivalence" || suite == "all") {
        s.note("[equivalence]");
        equivalence_suite(s, workers);
        known = true;
    }
    if (suite == "cayley" || suite == "all") {
        s.note("[cayley]");
        cayley_suite(s, workers);
        known = true;
    }
    if (!known) throw ParamError("verify: unknown suite '" + suite
                                 + "' (expected fractime|coercivity|equivalence|cayley|all)");
    VerifyOutcome out;
    out.pass = s.pass;
    out.log = s.log.str();
    return out;
}

}  // namespace stdd
