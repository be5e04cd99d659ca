// SPDX-License-Identifier: Apache-2.0
//
// Interface iterations in frequency space: Robin-Robin (a Peaceman-Rachford
// iteration on the interface), its Hilbert-transformed modification, and the
// Dirichlet-Neumann / Neumann-Neumann preconditioned fixed points. Every
// method is stationary at the direct interface solve, which doubles as the
// error reference for the per-iteration report.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stdd/fields.hpp"
#include "stdd/solver.hpp"

namespace stdd {

enum class Method { robin_robin, modified_robin_robin, dirichlet_neumann, neumann_neumann, direct };
enum class InitialGuess { zero, random, exact };

struct IterationConfig {
    Method method = Method::robin_robin;
    double s = 1.0;    // Robin parameter, > 0
    double phi = 0.1;  // modified-method angle, [0, pi/2); 0 degenerates to plain
    double s0 = 0.5;   // Dirichlet-Neumann damping, (0, 1)
    double s1 = 0.25, s2 = 0.25;  // Neumann-Neumann weights, > 0
    double tol = 1e-10;           // stop when the J-norm of the update falls below
    int max_iter = 500;
    InitialGuess initial_guess = InitialGuess::zero;
    std::uint64_t seed = 0;
};

struct IterationRecord {
    int iter = 0;
    double err_l2gamma = 0.0;   // sum over sides of ||eta_i^n - eta|| in L2(Gamma x time)
    double err_z = 0.0;         // same in the Z norm
    double err_l2lambda = 0.0;  // same in the L2(x)Lambda surrogate
    double err_l2h1_u = 0.0;    // sum over sides of ||u_i^n - u_i|| in L2(x)H1
    double err_w_u = 0.0;       // same in the W norm
    double pr_residual = 0.0;   // ||(sJ - S_2)(eta_2^n - eta)|| in the J^{-1} norm
    double update_j = 0.0;      // J-norm of the last interface update
    double seconds = 0.0;       // cumulative wall time
};

struct IterationReport {
    std::vector<IterationRecord> history;  // row 0 describes the initial guess
    bool converged = false;
    bool diverged = false;
    std::vector<std::string> warnings;
    int iterations = 0;
    double seconds_total = 0.0;
    InterfaceField eta1, eta2;            // final iterates (DN/NN: the single eta, twice)
    InterfaceField lambda1, lambda2;      // Neumann-Neumann correction fields
};

IterationReport robin_robin_run(Problem& p, const IterationConfig& cfg, const SpaceTimeField& f);
IterationReport modified_robin_robin_run(Problem& p, const IterationConfig& cfg,
                                         const SpaceTimeField& f);
IterationReport dirichlet_neumann_run(Problem& p, const IterationConfig& cfg,
                                      const SpaceTimeField& f);
IterationReport neumann_neumann_run(Problem& p, const IterationConfig& cfg,
                                    const SpaceTimeField& f);

// Robin-Robin in its subdomain-solve form (Robin boundary exchanges on the
// subdomain systems); equivalent to the interface form iterate by iterate and
// cross-checked against it in the tests.
struct SubdomainFormResult {
    SpaceTimeField u1, u2;
    InterfaceField eta1, eta2;
};
SubdomainFormResult robin_robin_subdomain_form(Problem& p, const IterationConfig& cfg,
                                               const SpaceTimeField& f, int n_iters);

// Seeded initial interface iterate shared by both formulations.
InterfaceField initial_interface_guess(Problem& p, const IterationConfig& cfg,
                                       const InterfaceField& eta_exact);

}  // namespace stdd
