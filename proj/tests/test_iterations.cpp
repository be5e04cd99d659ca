// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stdd/errors.hpp"
#include "stdd/iterations.hpp"
#include "stdd/manufactured.hpp"
#include "stdd/norms.hpp"
#include "stdd/steklov.hpp"

using namespace stdd;

namespace {

Problem desk_problem(int cells = 12, std::size_t n_t = 16, int dim = 2, double alpha = 0.5,
                     int workers = 2)
{
    SpaceMesh mesh = build_mesh(dim, 1.0, 1.0, cells, dim == 2 ? cells : 0);
    return Problem::build(std::move(mesh), alpha, TimeGrid::make(n_t, 8.0), workers);
}

SpaceTimeField bump_source(const Problem& p)
{
    return manufactured_case(p.mesh, p.grid, "bump-sine").f;
}

}  // namespace

TEST_CASE("every method is stationary at the exact interface solution")
{
    Problem p = desk_problem();
    const SpaceTimeField f = bump_source(p);
    IterationConfig cfg;
    cfg.initial_guess = InitialGuess::exact;
    cfg.max_iter = 3;
    cfg.tol = 1e-30;  // force all three iterations to run

    cfg.method = Method::robin_robin;
    const IterationReport rr = robin_robin_run(p, cfg, f);
    CHECK(rr.history.back().err_l2gamma <= 1e-10 * rr.history.front().err_l2gamma + 1e-10);

    cfg.method = Method::modified_robin_robin;
    cfg.phi = 0.1;
    const IterationReport mr = modified_robin_robin_run(p, cfg, f);
    CHECK(mr.history.back().err_l2gamma <= 1e-10);

    cfg.method = Method::dirichlet_neumann;
    const IterationReport dn = dirichlet_neumann_run(p, cfg, f);
    CHECK(dn.history.back().err_l2gamma <= 1e-10);

    cfg.method = Method::neumann_neumann;
    const IterationReport nn = neumann_neumann_run(p, cfg, f);
    CHECK(nn.history.back().err_l2gamma <= 1e-10);
}

TEST_CASE("exact initial guess stops after one iteration at the default tolerance")
{
    Problem p = desk_problem();
    const SpaceTimeField f = bump_source(p);
    IterationConfig cfg;
    cfg.initial_guess = InitialGuess::exact;
    const IterationReport rep = robin_robin_run(p, cfg, f);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
}

TEST_CASE("zero source with a random guess contracts to zero")
{
    Problem p = desk_problem(10, 16);
    const SpaceTimeField f(p.grid, p.op.full.n);
    IterationConfig cfg;
    cfg.initial_guess = InitialGuess::random;
    cfg.seed = 99;
    cfg.tol = 1e-14;
    cfg.max_iter = 400;
    const IterationReport rep = robin_robin_run(p, cfg, f);
    // the oracle fixed point is zero, so the error is the iterate itself
    CHECK(rep.history.back().err_l2gamma <= 1e-8);
    CHECK(norm_l2_gamma(p, rep.eta2) <= 1e-8);
}

TEST_CASE("zero source and zero guess return after one iteration with a zero report")
{
    Problem p = desk_problem();
    const SpaceTimeField f(p.grid, p.op.full.n);
    IterationConfig cfg;
    const IterationReport rep = robin_robin_run(p, cfg, f);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    CHECK(rep.history.back().err_l2gamma == 0.0);
    for (double x : rep.eta1.v) CHECK(x == 0.0);
}

TEST_CASE("desk-case Robin-Robin contraction and residual monotonicity")
{
    Problem p = desk_problem(16, 32);
    const SpaceTimeField f = bump_source(p);
    IterationConfig cfg;
    cfg.s = 1.0;
    cfg.tol = 1e-12;
    cfg.max_iter = 500;
    const IterationReport rep = robin_robin_run(p, cfg, f);
    CHECK(rep.converged);
    CHECK(rep.warnings.empty());
    const auto& first = rep.history.front();
    const auto& last = rep.history.back();
    CHECK(last.err_l2gamma <= 1e-8 * first.err_l2gamma);
    CHECK(last.err_l2h1_u <= 1e-8 * first.err_l2h1_u);
    for (std::size_t i = 1; i < rep.history.size(); ++i)
        CHECK(rep.history[i].pr_residual
              <= rep.history[i - 1].pr_residual + 1e-12 * first.pr_residual);
}

TEST_CASE("modified method with phi = 0 is bit-identical to the plain method")
{
    Problem p = desk_problem(10, 16);
    const SpaceTimeField f = bump_source(p);
    IterationConfig cfg;
    cfg.tol = 1e-11;
    cfg.max_iter = 120;
    const IterationReport plain = robin_robin_run(p, cfg, f);
    cfg.phi = 0.0;
    const IterationReport modified = modified_robin_robin_run(p, cfg, f);
    REQUIRE(plain.history.size() == modified.history.size());
    for (std::size_t i = 0; i < plain.history.size(); ++i) {
        CHECK(plain.history[i].err_l2gamma == modified.history[i].err_l2gamma);
        CHECK(plain.history[i].err_z == modified.history[i].err_z);
        CHECK(plain.history[i].err_w_u == modified.history[i].err_w_u);
        CHECK(plain.history[i].pr_residual == modified.history[i].pr_residual);
        CHECK(plain.history[i].update_j == modified.history[i].update_j);
    }
    for (std::size_t i = 0; i < plain.eta2.v.size(); ++i)
        CHECK(plain.eta2.v[i] == modified.eta2.v[i]);
}

TEST_CASE("modified method contracts the W and Z errors")
{
    Problem p = desk_problem(16, 32);
    const SpaceTimeField f = bump_source(p);
    IterationConfig cfg;
    cfg.method = Method::modified_robin_robin;
    cfg.phi = 0.1;
    cfg.tol = 1e-12;
    cfg.max_iter = 500;
    const IterationReport rep = modified_robin_robin_run(p, cfg, f);
    CHECK(rep.converged);
    CHECK(rep.history.back().err_w_u <= 1e-8 * rep.history.front().err_w_u);
    CHECK(rep.history.back().err_z <= 1e-8 * rep.history.front().err_z);
}

TEST_CASE("parameter validation")
{
    Problem p = desk_problem(8, 8);
    const SpaceTimeField f(p.grid, p.op.full.n);
    IterationConfig cfg;
    cfg.s = 0.0;
    CHECK_THROWS_AS(robin_robin_run(p, cfg, f), ParamError);
    cfg.s = 1.0;
    cfg.phi = 1.6;
    CHECK_THROWS_AS(modified_robin_robin_run(p, cfg, f), ParamError);
    cfg.phi = 0.1;
    cfg.s0 = 1.5;
    CHECK_THROWS_AS(dirichlet_neumann_run(p, cfg, f), ParamError);
    cfg.s0 = 0.5;
    cfg.s1 = -1.0;
    CHECK_THROWS_AS(neumann_neumann_run(p, cfg, f), ParamError);
}

TEST_CASE("one Dirichlet-Neumann step from zero matches dense mode algebra")
{
    Problem p = desk_problem(8, 16);
    const SpaceTimeField f = bump_source(p);
    IterationConfig cfg;
    cfg.method = Method::dirichlet_neumann;
    cfg.s0 = 0.5;
    cfg.max_iter = 1;
    cfg.tol = 1e-30;
    const IterationReport rep = dirichlet_neumann_run(p, cfg, f);

    // oracle: eta^1 = s0 * S_2^{-1} (chi_1 + chi_2) per mode
    ensure_schur(p);
    const ChiFunctional c1 = chi_functional(p, 1, restrict_side(p, 1, f));
    const ChiFunctional c2 = chi_functional(p, 2, restrict_side(p, 2, f));
    InterfaceSpectrum eta(p.grid, p.op.n_gamma);
    for (std::size_t k = 0; k < p.n_modes(); ++k) {
        auto rhs = c1.mode(k);
        const auto add = c2.mode(k);
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += add[i];
        DenseLU lu(p.schur[1][k]);
        lu.solve(rhs.data());
        for (auto& v : rhs) v *= cfg.s0;
        eta.set_mode(k, rhs.data());
    }
    eta.mirror_upper();
    const InterfaceField oracle = inverse_fft(std::move(eta));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < oracle.v.size(); ++i) {
        num += (oracle.v[i] - rep.eta1.v[i]) * (oracle.v[i] - rep.eta1.v[i]);
        den += oracle.v[i] * oracle.v[i];
    }
    CHECK(std::sqrt(num / den) <= 1e-12);
}

TEST_CASE("Neumann-Neumann corrections mirror exactly in dim 1")
{
    // symmetric geometry and source; the two Schur complements coincide, so
    // the subdomain corrections must agree identically
    Problem p = desk_problem(16, 16, 1, 0.5);
    const std::size_t n = p.op.full.n;
    SpaceTimeField f(p.grid, n);
    const ManufacturedCase mc = manufactured_case(p.mesh, p.grid, "bump-sine");
    f = mc.f;  // sin(pi x) profile is mirror symmetric about x = 1/2
    IterationConfig cfg;
    cfg.method = Method::neumann_neumann;
    cfg.max_iter = 5;
    cfg.tol = 1e-30;
    const IterationReport rep = neumann_neumann_run(p, cfg, f);
    for (std::size_t i = 0; i < rep.lambda1.v.size(); ++i)
        CHECK(std::abs(rep.lambda1.v[i] - rep.lambda2.v[i])
              <= 1e-12 * (std::abs(rep.lambda1.v[i]) + 1e-12));
    CHECK(rep.history.back().err_l2gamma < rep.history.front().err_l2gamma);
}

TEST_CASE("Neumann-Neumann 2d asymmetry from the fixed diagonal stays small")
{
    Problem p = desk_problem(12, 16);
    const SpaceTimeField f = bump_source(p);
    IterationConfig cfg;
    cfg.method = Method::neumann_neumann;
    cfg.max_iter = 3;
    cfg.tol = 1e-30;
    const IterationReport rep = neumann_neumann_run(p, cfg, f);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < rep.lambda1.v.size(); ++i) {
        num += (rep.lambda1.v[i] - rep.lambda2.v[i]) * (rep.lambda1.v[i] - rep.lambda2.v[i]);
        den += rep.lambda1.v[i] * rep.lambda1.v[i];
    }
    const double asym = std::sqrt(num / den);
    MESSAGE("2d mirror asymmetry of the corrections: ", asym);
    CHECK(asym < 0.05);  // the mass-matrix diagonal coupling is O(h^2)
}

TEST_CASE("DN and NN run at defaults without singular solves and are recorded")
{
    Problem p = desk_problem(12, 16);
    const SpaceTimeField f = bump_source(p);
    IterationConfig cfg;
    cfg.max_iter = 60;
    cfg.tol = 1e-10;
    cfg.method = Method::dirichlet_neumann;
    const IterationReport dn = dirichlet_neumann_run(p, cfg, f);
    CHECK(!dn.history.empty());
    cfg.method = Method::neumann_neumann;
    const IterationReport nn = neumann_neumann_run(p, cfg, f);
    CHECK(!nn.history.empty());
    MESSAGE("DN converged=", dn.converged, " iters=", dn.iterations,
            " final=", dn.history.back().err_l2gamma);
    MESSAGE("NN converged=", nn.converged, " iters=", nn.iterations,
            " final=", nn.history.back().err_l2gamma);
}

TEST_CASE("Dirichlet-Neumann converges across a recorded damping range")
{
    Problem p = desk_problem(10, 16);
    const SpaceTimeField f = bump_source(p);
    for (const double s0 : {0.25, 0.5, 0.75}) {
        IterationConfig cfg;
        cfg.method = Method::dirichlet_neumann;
        cfg.s0 = s0;
        cfg.tol = 1e-10;
        cfg.max_iter = 200;
        const IterationReport rep = dirichlet_neumann_run(p, cfg, f);
        CHECK(rep.converged);
        MESSAGE("DN s0=", s0, " converged in ", rep.iterations, " iterations");
    }
}

TEST_CASE("interface form and subdomain form produce identical iterates")
{
    Problem p = desk_problem(10, 16);
    const SpaceTimeField f = bump_source(p);
    IterationConfig cfg;
    cfg.s = 1.3;
    cfg.initial_guess = InitialGuess::random;
    cfg.seed = 11;
    cfg.max_iter = 7;
    cfg.tol = 1e-30;
    const IterationReport itf = robin_robin_run(p, cfg, f);
    const SubdomainFormResult pde = robin_robin_subdomain_form(p, cfg, f, 7);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < itf.eta2.v.size(); ++i) {
        num += (itf.eta2.v[i] - pde.eta2.v[i]) * (itf.eta2.v[i] - pde.eta2.v[i]);
        den += itf.eta2.v[i] * itf.eta2.v[i];
    }
    CHECK(std::sqrt(num / den) <= 1e-11);

    // the reconstructed field F eta + G f matches the Robin subdomain solve
    SpaceTimeField u1 = harmonic_extension(p, 1, itf.eta1);
    const SpaceTimeField g1 = interior_lift(p, 1, restrict_side(p, 1, f));
    for (std::size_t i = 0; i < u1.v.size(); ++i) u1.v[i] += g1.v[i];
    num = den = 0.0;
    for (std::size_t i = 0; i < u1.v.size(); ++i) {
        num += (u1.v[i] - pde.u1.v[i]) * (u1.v[i] - pde.u1.v[i]);
        den += u1.v[i] * u1.v[i];
    }
    CHECK(std::sqrt(num / den) <= 1e-11);
}

TEST_CASE("mode-parallel runs are bitwise independent of the worker count")
{
    SpaceMesh mesh1 = build_mesh(2, 1.0, 1.0, 10, 10);
    Problem p1 = Problem::build(std::move(mesh1), 0.5, TimeGrid::make(16, 8.0), 1);
    SpaceMesh mesh4 = build_mesh(2, 1.0, 1.0, 10, 10);
    Problem p4 = Problem::build(std::move(mesh4), 0.5, TimeGrid::make(16, 8.0), 4);
    const SpaceTimeField f1 = bump_source(p1);
    const SpaceTimeField f4 = bump_source(p4);
    IterationConfig cfg;
    cfg.max_iter = 25;
    cfg.tol = 1e-30;
    const IterationReport a = robin_robin_run(p1, cfg, f1);
    const IterationReport b = robin_robin_run(p4, cfg, f4);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].err_l2gamma == b.history[i].err_l2gamma);
        CHECK(a.history[i].update_j == b.history[i].update_j);
    }
    for (std::size_t i = 0; i < a.eta2.v.size(); ++i) CHECK(a.eta2.v[i] == b.eta2.v[i]);
}
