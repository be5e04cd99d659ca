// SPDX-License-Identifier: Apache-2.0
//
// Time-dependent Steklov-Poincare operators on the interface: per mode they
// are the dense Schur complements of K + sigma_k M condensed onto the gamma
// nodes. Provides the chi functionals, the direct interface solve (the
// oracle fixed point of every iteration), and the Cayley contraction check.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "stdd/fields.hpp"
#include "stdd/solver.hpp"

namespace stdd {

// Per-frequency right-hand-side vectors of the interface equation.
using ChiFunctional = InterfaceSpectrum;

// Assembled blocks S_i(xi_k), modes 0..n_t/2 (ensure_schur builds them).
const std::vector<DenseZ>& steklov_blocks(Problem& p, int side);

// S_i eta via the assembled per-mode Schur complements.
InterfaceField apply_steklov(Problem& p, int side, const InterfaceField& eta);
// Same operator evaluated matrix-free through extension + Galerkin flux.
InterfaceField apply_steklov_matrix_free(Problem& p, int side, const InterfaceField& eta);

// chi_i for a subdomain source: per mode (M_i f - A_i G_i f)|_gamma.
ChiFunctional chi_functional(Problem& p, int side, const SpaceTimeField& f_side);
InterfaceField chi_field(Problem& p, int side, const SpaceTimeField& f_side);

// Direct per-mode solve of (s*M_gamma + S_1 + S_2) eta = chi_1 + chi_2 for
// s >= 0; s = 0 is the interface equation itself.
InterfaceSpectrum solve_sp_direct_spectrum(Problem& p, const ChiFunctional& chi1,
                                           const ChiFunctional& chi2, double s);
InterfaceField solve_sp_direct(Problem& p, const ChiFunctional& chi1,
                               const ChiFunctional& chi2, double s);

// M_gamma^{-1}-weighted operator norm of
// (sM - S_1)(sM + S_1)^{-1}(sM - S_2)(sM + S_2)^{-1) at mode k, computed from
// dense singular values in Cholesky-transformed coordinates; this is the
// contraction factor of the transformed Peaceman-Rachford residual.
double cayley_contraction_check(Problem& p, double s, std::size_t k);

}  // namespace stdd
