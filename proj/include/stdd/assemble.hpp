// SPDX-License-Identifier: Apache-2.0
//
// P1 assembly: stiffness and mass share one CSR pattern so per-frequency
// operators K + sigma*M stream through the matrix once. Interface operators
// (the 1D interface mass and the Sobolev-Slobodetskii quadrature Gram used
// by the Lambda norm) are small dense matrices over the gamma nodes.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "stdd/mesh.hpp"

namespace stdd {

struct PairCsr {
    std::size_t n = 0;
    std::vector<int> ptr, col;
    std::vector<double> kv, mv;

    // y = (kw*K + mw*M) x
    void apply(double kw, double mw, const double* x, double* y) const;
    // split-complex y = (K + sigma*M) x
    void apply_sigma(std::complex<double> sigma, const double* xr, const double* xi,
                     double* yr, double* yi) const;
    double quad_k(const double* x, const double* y) const;  // x^T K y
    double quad_m(const double* x, const double* y) const;  // x^T M y
    std::size_t bandwidth() const;
};

struct SparseOperator {
    PairCsr full;                 // all free nodes, global ordering
    std::array<PairCsr, 2> side;  // side-local orderings from Decomposition
    std::size_t n_gamma = 0;
    std::vector<double> m_gamma;                    // dense g x g, column-major
    std::array<std::vector<double>, 2> q_lambda;    // Lambda-norm Gram per side
};

SparseOperator assemble(const SpaceMesh& mesh, const Decomposition& dec);

// Assembly over every grid node, Dirichlet rows included (row sums of the
// stiffness vanish here); used by verification code.
PairCsr assemble_unreduced(const SpaceMesh& mesh);

// || E_i mu ||_{H^{1/2}(boundary of subdomain i)} by midpoint quadrature of
// the double integral over boundary-segment pairs (self-pairs excluded) plus
// the L^2 term; |mu| at the interface point in dim 1.
double lambda_norm(const std::vector<double>& mu, const SparseOperator& op, int side);

}  // namespace stdd
