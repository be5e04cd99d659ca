// SPDX-License-Identifier: Apache-2.0

#include "stdd/norms.hpp"

#include <cmath>

#include "stdd/errors.hpp"

namespace stdd {

using cd = std::complex<double>;

void RieszMap::apply(const cd* x, cd* y) const
{
    for (std::size_t i = 0; i < g; ++i) {
        cd acc(0.0, 0.0);
        for (std::size_t j = 0; j < g; ++j) acc += (*m)[j * g + i] * x[j];
        y[i] = acc;
    }
}

void RieszMap::solve(cd* x) const
{
    const auto& l = *chol;
    for (std::size_t i = 0; i < g; ++i) {
        cd s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= l[j * g + i] * x[j];
        x[i] = s / l[i * g + i];
    }
    for (std::size_t ii = g; ii-- > 0;) {
        cd s = x[ii];
        for (std::size_t j = ii + 1; j < g; ++j) s -= l[ii * g + j] * x[j];
        x[ii] = s / l[ii * g + ii];
    }
}

double RieszMap::quad(const cd* x) const { return quad_dense(*m, g, x); }

double RieszMap::quad_inv(const cd* x) const
{
    std::vector<cd> y(x, x + g);
    solve(y.data());
    double acc = 0.0;
    for (std::size_t i = 0; i < g; ++i)
        acc += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    return acc;
}

double quad_dense(const std::vector<double>& q, std::size_t g, const cd* x)
{
    double acc = 0.0;
    for (std::size_t j = 0; j < g; ++j) {
        double cr = 0.0, ci = 0.0;
        for (std::size_t i = 0; i < g; ++i) {
            cr += q[j * g + i] * x[i].real();
            ci += q[j * g + i] * x[i].imag();
        }
        acc += x[j].real() * cr + x[j].imag() * ci;
    }
    return acc;
}

namespace {

// sum over modes of mult * w * y^H (kw*K + mw(k)*M) y
template <class WeightFn>
double field_quad(const Problem& p, int side, const SpaceTimeField& u, double kw, WeightFn mw)
{
    const PairCsr& a = side == 0 ? p.op.full : p.op.side[side - 1];
    check_field(u, a.n, "norm");
    SpaceSpectrum us = forward_fft(u);
    const double w = p.grid.parseval_weight();
    std::vector<cd> uz(a.n);
    double acc = 0.0;
    for (std::size_t k = 0; k < p.n_modes(); ++k) {
        us.mode(k, uz.data());
        acc += us.mult(k) * w
               * (kw * modes::quad_k(a, uz.data()) + mw(k) * modes::quad_m(a, uz.data()));
    }
    return acc;
}

}  // namespace

double norm_l2h1(const Problem& p, int side, const SpaceTimeField& u)
{
    return std::sqrt(field_quad(p, side, u, 1.0, [](std::size_t) { return 1.0; }));
}

double norm_w(const Problem& p, int side, const SpaceTimeField& u)
{
    const auto& xi = p.sym.xi;
    return std::sqrt(field_quad(p, side, u, 1.0, [&](std::size_t k) {
        return std::sqrt(1.0 + xi[k] * xi[k]);
    }));
}

double norm_l2(const Problem& p, int side, const SpaceTimeField& u)
{
    return std::sqrt(field_quad(p, side, u, 0.0, [](std::size_t) { return 1.0; }));
}

double norm_l2_gamma(const Problem& p, const InterfaceField& eta)
{
    check_field(eta, p.op.n_gamma, "norm_l2_gamma");
    InterfaceSpectrum es = forward_fft(eta);
    RieszMap j(p);
    const double w = p.grid.parseval_weight();
    std::vector<cd> ez(p.op.n_gamma);
    double acc = 0.0;
    for (std::size_t k = 0; k < p.n_modes(); ++k) {
        es.mode(k, ez.data());
        acc += es.mult(k) * w * j.quad(ez.data());
    }
    return std::sqrt(acc);
}

double norm_z(const Problem& p, const InterfaceField& eta, int lambda_side)
{
    check_field(eta, p.op.n_gamma, "norm_z");
    InterfaceSpectrum es = forward_fft(eta);
    RieszMap j(p);
    const auto& ql = p.op.q_lambda[lambda_side - 1];
    const double w = p.grid.parseval_weight();
    std::vector<cd> ez(p.op.n_gamma);
    double acc = 0.0;
    for (std::size_t k = 0; k < p.n_modes(); ++k) {
        es.mode(k, ez.data());
        const double xi2 = p.sym.xi[k] * p.sym.xi[k];
        // H^{1/4} time weight enters the squared norm as (1 + xi^2)^{1/2}
        acc += es.mult(k) * w
               * (std::sqrt(1.0 + xi2) * j.quad(ez.data())
                  + quad_dense(ql, p.op.n_gamma, ez.data()));
    }
    return std::sqrt(acc);
}

double norm_l2_lambda(const Problem& p, const InterfaceField& eta, int lambda_side)
{
    check_field(eta, p.op.n_gamma, "norm_l2_lambda");
    InterfaceSpectrum es = forward_fft(eta);
    const auto& ql = p.op.q_lambda[lambda_side - 1];
    const double w = p.grid.parseval_weight();
    std::vector<cd> ez(p.op.n_gamma);
    double acc = 0.0;
    for (std::size_t k = 0; k < p.n_modes(); ++k) {
        es.mode(k, ez.data());
        acc += es.mult(k) * w * quad_dense(ql, p.op.n_gamma, ez.data());
    }
    return std::sqrt(acc);
}

}  // namespace stdd
