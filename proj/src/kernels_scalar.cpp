// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference kernels. These define the semantics the SIMD variants
// must reproduce lane-for-lane (see kernels.hpp); keep the fma placement in
// sync with kernels_avx2.cpp.

#include "stdd/kernels.hpp"

#include <cmath>

namespace stdd::kern {
namespace scalar {

static void axpy(double a, const double* x, double* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] = std::fma(a, x[i], y[i]);
}

static void scal(double a, double* x, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        x[i] *= a;
}

static double dot(const double* x, const double* y, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s = std::fma(x[i], y[i], s);
    return s;
}

static void butterfly(double* re0, double* im0, double* re1, double* im1,
                      double wr, double wi, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        // t = w * x1, complex product with single-rounding accumulation
        const double tr = std::fma(wr, re1[i], -(wi * im1[i]));
        const double ti = std::fma(wr, im1[i], wi * re1[i]);
        re1[i] = re0[i] - tr;
        im1[i] = im0[i] - ti;
        re0[i] = re0[i] + tr;
        im0[i] = im0[i] + ti;
    }
}

static void cscale(double* re, double* im, double ar, double ai, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::fma(ar, re[i], -(ai * im[i]));
        const double m = std::fma(ar, im[i], ai * re[i]);
        re[i] = r;
        im[i] = m;
    }
}

static void caxpy(double ar, double ai, const double* xr, const double* xi,
                  double* yr, double* yi, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        yr[i] += std::fma(ar, xr[i], -(ai * xi[i]));
        yi[i] += std::fma(ar, xi[i], ai * xr[i]);
    }
}

static void zaxpy(std::complex<double> a, const std::complex<double>* x,
                  std::complex<double>* y, std::size_t n)
{
    const double ar = a.real(), ai = a.imag();
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        yd[2 * i] += std::fma(ar, xr, -(ai * xi));
        yd[2 * i + 1] += std::fma(ar, xi, ai * xr);
    }
}

}  // namespace scalar

const Ops& scalar_ops()
{
    static const Ops table = {
        "scalar",
        &scalar::axpy, &scalar::scal,    &scalar::dot,
        &scalar::butterfly, &scalar::cscale, &scalar::caxpy, &scalar::zaxpy,
    };
    return table;
}

}  // namespace stdd::kern
