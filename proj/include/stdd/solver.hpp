// SPDX-License-Identifier: Apache-2.0
//
// Frequency-diagonalized space-time solves for the heat equation on a
// periodic window. The space-time Galerkin system block-diagonalizes under
// the DFT into one complex elliptic system K + sigma_k M per mode; only modes
// 0..n_t/2 are solved and the rest follow by conjugate symmetry. Per-mode
// factorizations are cached on the Problem and reused across iterations.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "stdd/assemble.hpp"
#include "stdd/band_lu.hpp"
#include "stdd/dense.hpp"
#include "stdd/fields.hpp"
#include "stdd/mesh.hpp"
#include "stdd/time_grid.hpp"

namespace stdd {

struct Problem {
    SpaceMesh mesh;
    Decomposition dec;
    SparseOperator op;
    TimeGrid grid;
    FrequencySymbols sym;
    int workers = 1;
    bool cache_factors = true;

    std::size_t n_modes() const { return grid.n_t / 2 + 1; }
    std::size_t n_side(int side) const { return dec.side_dofs[side - 1].size(); }

    // caches; built by the ensure_* calls below (never inside parallel loops)
    std::vector<BandLU> mono_lu;
    std::array<std::vector<BandLU>, 2> interior_lu;
    std::array<std::vector<DenseZ>, 2> schur;
    std::vector<double> m_gamma_chol;
    std::array<std::vector<int>, 2> interior_map;  // side-local -> interior-local / -1
    std::size_t band_full = 0;
    std::array<std::size_t, 2> band_interior{};

    static Problem build(SpaceMesh mesh, double alpha, TimeGrid grid, int workers = 1);
};

void ensure_mono_factors(Problem& p);
void ensure_interior_factors(Problem& p);
void ensure_schur(Problem& p);

// Per-frequency solve of the weak problem; relative residual of every mode
// solve is checked against 1e-12.
SpaceTimeField solve_monodomain(Problem& p, const SpaceTimeField& f);

// F_i: heat-harmonic extension of interface data; the returned field carries
// eta bit-for-bit on the gamma rows.
SpaceTimeField harmonic_extension(Problem& p, int side, const InterfaceField& eta);

// G_i: interior solve with zero trace on the whole subdomain boundary.
SpaceTimeField interior_lift(Problem& p, int side, const SpaceTimeField& f_side);

InterfaceField trace(const Problem& p, int side, const SpaceTimeField& u_side);

// Galerkin flux on the interface: per mode (A_i u - M_i f)|_gamma. Requires
// u_side to solve the interior equations for f_side.
InterfaceField flux_functional(Problem& p, int side, const SpaceTimeField& u_side,
                               const SpaceTimeField& f_side);

// a(u, v) (side = 0) or a_i(u_i, v_i) (side = 1, 2).
double bilinear_a(const Problem& p, int side, const SpaceTimeField& u,
                  const SpaceTimeField& v);

SpaceTimeField restrict_side(const Problem& p, int side, const SpaceTimeField& full);
InterfaceField restrict_gamma(const Problem& p, const SpaceTimeField& full);
// Glues side fields into a global one; the shared gamma rows are taken from
// side 1 (caller guarantees equal traces).
SpaceTimeField paste(const Problem& p, const SpaceTimeField& u1, const SpaceTimeField& u2);

// Mode-level plumbing shared with the interface methods.
namespace modes {

// y = (K + sigma_k M) x on the given operator block
void apply_sigma(const PairCsr& a, std::complex<double> sigma,
                 const std::complex<double>* x, std::complex<double>* y);
// y = M x
void apply_mass(const PairCsr& a, const std::complex<double>* x, std::complex<double>* y);
// Re(y^H K y), Re(y^H M y)
double quad_k(const PairCsr& a, const std::complex<double>* y);
double quad_m(const PairCsr& a, const std::complex<double>* y);

}  // namespace modes

}  // namespace stdd
