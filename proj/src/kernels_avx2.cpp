// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma on x86_64 only; the
// dispatcher never hands these out unless the CPU reports both features.
//
// Lane arithmetic must match kernels_scalar.cpp bitwise: every product that
// the scalar path rounds once is a vmulpd here, every scalar std::fma is a
// vfmadd/vfmsub, tails are delegated to the scalar kernels.

#include "stdd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace stdd::kern {
namespace avx2 {

static void axpy(double a, const double* x, double* y, std::size_t n)
{
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, vy);
    }
    scalar_ops().axpy(a, x + i, y + i, n - i);
}

static void scal(double a, double* x, std::size_t n)
{
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    scalar_ops().scal(a, x + i, n - i);
}

static double dot(const double* x, const double* y, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    return s + scalar_ops().dot(x + i, y + i, n - i);
}

static void butterfly(double* re0, double* im0, double* re1, double* im1,
                      double wr, double wi, std::size_t n)
{
    const __m256d vwr = _mm256_set1_pd(wr);
    const __m256d vwi = _mm256_set1_pd(wi);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r1 = _mm256_loadu_pd(re1 + i);
        const __m256d m1 = _mm256_loadu_pd(im1 + i);
        const __m256d tr = _mm256_fmsub_pd(vwr, r1, _mm256_mul_pd(vwi, m1));
        const __m256d ti = _mm256_fmadd_pd(vwr, m1, _mm256_mul_pd(vwi, r1));
        const __m256d r0 = _mm256_loadu_pd(re0 + i);
        const __m256d m0 = _mm256_loadu_pd(im0 + i);
        _mm256_storeu_pd(re1 + i, _mm256_sub_pd(r0, tr));
        _mm256_storeu_pd(im1 + i, _mm256_sub_pd(m0, ti));
        _mm256_storeu_pd(re0 + i, _mm256_add_pd(r0, tr));
        _mm256_storeu_pd(im0 + i, _mm256_add_pd(m0, ti));
    }
    scalar_ops().butterfly(re0 + i, im0 + i, re1 + i, im1 + i, wr, wi, n - i);
}

static void cscale(double* re, double* im, double ar, double ai, std::size_t n)
{
    const __m256d var = _mm256_set1_pd(ar);
    const __m256d vai = _mm256_set1_pd(ai);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_loadu_pd(re + i);
        const __m256d m = _mm256_loadu_pd(im + i);
        _mm256_storeu_pd(re + i, _mm256_fmsub_pd(var, r, _mm256_mul_pd(vai, m)));
        _mm256_storeu_pd(im + i, _mm256_fmadd_pd(var, m, _mm256_mul_pd(vai, r)));
    }
    scalar_ops().cscale(re + i, im + i, ar, ai, n - i);
}

static void caxpy(double ar, double ai, const double* xr, const double* xi,
                  double* yr, double* yi, std::size_t n)
{
    const __m256d var = _mm256_set1_pd(ar);
    const __m256d vai = _mm256_set1_pd(ai);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_loadu_pd(xr + i);
        const __m256d m = _mm256_loadu_pd(xi + i);
        const __m256d pr = _mm256_fmsub_pd(var, r, _mm256_mul_pd(vai, m));
        const __m256d pi = _mm256_fmadd_pd(var, m, _mm256_mul_pd(vai, r));
        _mm256_storeu_pd(yr + i, _mm256_add_pd(_mm256_loadu_pd(yr + i), pr));
        _mm256_storeu_pd(yi + i, _mm256_add_pd(_mm256_loadu_pd(yi + i), pi));
    }
    scalar_ops().caxpy(ar, ai, xr + i, xi + i, yr + i, yi + i, n - i);
}

static void zaxpy(std::complex<double> a, const std::complex<double>* x,
                  std::complex<double>* y, std::size_t n)
{
    const __m256d var = _mm256_set1_pd(a.real());
    const __m256d vai = _mm256_set1_pd(a.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {  // two complex values per vector
        const __m256d v = _mm256_loadu_pd(xd + 2 * i);
        const __m256d vs = _mm256_permute_pd(v, 0b0101);  // [xi0 xr0 xi1 xr1]
        // even lanes ar*xr - ai*xi, odd lanes ar*xi + ai*xr
        const __m256d p = _mm256_fmaddsub_pd(var, v, _mm256_mul_pd(vai, vs));
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), p));
    }
    scalar_ops().zaxpy(a, x + i, y + i, n - i);
}

}  // namespace avx2

namespace detail {

const Ops& avx2_table()
{
    static const Ops table = {
        "avx2",
        &avx2::axpy, &avx2::scal,   &avx2::dot,
        &avx2::butterfly, &avx2::cscale, &avx2::caxpy, &avx2::zaxpy,
    };
    return table;
}

bool avx2_cpu_ok()
{
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace detail
}  // namespace stdd::kern

#endif  // x86_64
