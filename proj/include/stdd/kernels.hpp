// SPDX-License-Identifier: Apache-2.0
//
// Data-parallel inner-loop kernels with scalar reference implementations and
// an AVX2 variant selected at runtime. Split-complex kernels operate on
// separate re/im planes (the FFT layout); interleaved kernels operate on
// std::complex arrays (the LU layout).
//
// Contract: the "map" kernels (axpy, scal, butterfly, cscale, caxpy, zaxpy)
// must produce bitwise-identical results in every lane across all variants.
// Both paths therefore use fused multiply-add with the same operation order:
//   (a*b) with one rounding, fma(x, y, +-z) with one rounding.
// Reductions (dot) may reassociate and are only tolerance-equivalent.
#pragma once

#include <complex>
#include <cstddef>

namespace stdd::kern {

struct Ops {
    const char* name;

    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // x[i] *= a
    void (*scal)(double a, double* x, std::size_t n);
    // sum_i x[i] * y[i]   (reduction: order differs between variants)
    double (*dot)(const double* x, const double* y, std::size_t n);

    // radix-2 butterfly across n lanes with fixed twiddle w = wr + i*wi:
    //   t = w * x1;  x1 = x0 - t;  x0 = x0 + t
    void (*butterfly)(double* re0, double* im0, double* re1, double* im1,
                      double wr, double wi, std::size_t n);
    // (re, im)[i] *= (ar + i*ai)
    void (*cscale)(double* re, double* im, double ar, double ai, std::size_t n);
    // split-complex y += (ar + i*ai) * x
    void (*caxpy)(double ar, double ai, const double* xr, const double* xi,
                  double* yr, double* yi, std::size_t n);
    // interleaved-complex y += a * x
    void (*zaxpy)(std::complex<double> a, const std::complex<double>* x,
                  std::complex<double>* y, std::size_t n);
};

const Ops& scalar_ops();

// True when the AVX2 variant is both compiled in and supported by this CPU.
bool avx2_available();
const Ops& avx2_ops();  // precondition: avx2_available()

// Dispatched table. Environment override STDD_SIMD=scalar|avx2 wins when
// feasible; an infeasible request falls back to scalar.
const Ops& ops();

}  // namespace stdd::kern
