// SPDX-License-Identifier: Apache-2.0
//
// Reporting norms: L2(x)H1 and W graph norms on space-time fields, the Z and
// L2(x)Lambda norms on interface fields, plus the Riesz map built from the
// interface mass matrix. All frequency parts are Parseval sums over modes;
// the Lambda part reuses the quadrature Gram, which is also a per-mode form.
#pragma once

#include <complex>
#include <vector>

#include "stdd/fields.hpp"
#include "stdd/solver.hpp"

namespace stdd {

// Riesz isomorphism of L^2(Gamma x time): per mode it acts as the interface
// mass matrix (the time factor is the identity in frequency space).
struct RieszMap {
    const std::vector<double>* m;     // dense g x g
    const std::vector<double>* chol;  // lower Cholesky factor of m
    std::size_t g = 0;

    explicit RieszMap(const Problem& p)
        : m(&p.op.m_gamma), chol(&p.m_gamma_chol), g(p.op.n_gamma) {}

    void apply(const std::complex<double>* x, std::complex<double>* y) const;   // y = M x
    void solve(std::complex<double>* x) const;                                  // x := M^{-1} x
    double quad(const std::complex<double>* x) const;                           // Re x^H M x
    double quad_inv(const std::complex<double>* x) const;                       // Re x^H M^{-1} x
};

double quad_dense(const std::vector<double>& q, std::size_t g, const std::complex<double>* x);

// field norms; side 0 means the whole domain
double norm_l2h1(const Problem& p, int side, const SpaceTimeField& u);
double norm_w(const Problem& p, int side, const SpaceTimeField& u);
double norm_l2(const Problem& p, int side, const SpaceTimeField& u);

// interface norms (lambda_side picks the extension side for the Lambda part)
double norm_l2_gamma(const Problem& p, const InterfaceField& eta);
double norm_z(const Problem& p, const InterfaceField& eta, int lambda_side = 1);
double norm_l2_lambda(const Problem& p, const InterfaceField& eta, int lambda_side = 1);

}  // namespace stdd
