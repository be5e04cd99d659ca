// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "stdd/kernels.hpp"

using namespace stdd;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

}  // namespace

TEST_CASE("scalar and avx2 map kernels agree bitwise")
{
    if (!kern::avx2_available()) return;  // nothing to compare on this host
    const auto& sc = kern::scalar_ops();
    const auto& vx = kern::avx2_ops();
    // lengths cover full vectors plus every tail remainder
    for (std::size_t n : {std::size_t(1), std::size_t(3), std::size_t(4), std::size_t(7),
                          std::size_t(16), std::size_t(37), std::size_t(256)}) {
        auto x = random_vec(n, 10 * n + 1);
        auto y0 = random_vec(n, 10 * n + 2);
        auto y1 = y0;
        sc.axpy(1.37, x.data(), y0.data(), n);
        vx.axpy(1.37, x.data(), y1.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(y0[i] == y1[i]);

        auto s0 = x, s1 = x;
        sc.scal(-0.731, s0.data(), n);
        vx.scal(-0.731, s1.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(s0[i] == s1[i]);

        auto re0 = random_vec(n, 10 * n + 3), im0 = random_vec(n, 10 * n + 4);
        auto re1 = random_vec(n, 10 * n + 5), im1 = random_vec(n, 10 * n + 6);
        auto re0b = re0, im0b = im0, re1b = re1, im1b = im1;
        sc.butterfly(re0.data(), im0.data(), re1.data(), im1.data(), 0.3141, -0.9512, n);
        vx.butterfly(re0b.data(), im0b.data(), re1b.data(), im1b.data(), 0.3141, -0.9512, n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(re0[i] == re0b[i]);
            CHECK(im0[i] == im0b[i]);
            CHECK(re1[i] == re1b[i]);
            CHECK(im1[i] == im1b[i]);
        }

        auto cr = random_vec(n, 10 * n + 7), ci = random_vec(n, 10 * n + 8);
        auto crb = cr, cib = ci;
        sc.cscale(cr.data(), ci.data(), -1.25, 0.5, n);
        vx.cscale(crb.data(), cib.data(), -1.25, 0.5, n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(cr[i] == crb[i]);
            CHECK(ci[i] == cib[i]);
        }

        auto yr0 = random_vec(n, 10 * n + 9), yi0 = random_vec(n, 10 * n + 10);
        auto yr1 = yr0, yi1 = yi0;
        sc.caxpy(0.77, -0.31, re0.data(), im0.data(), yr0.data(), yi0.data(), n);
        vx.caxpy(0.77, -0.31, re0.data(), im0.data(), yr1.data(), yi1.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(yr0[i] == yr1[i]);
            CHECK(yi0[i] == yi1[i]);
        }

        std::vector<std::complex<double>> zx(n), zy0(n);
        for (std::size_t i = 0; i < n; ++i) {
            zx[i] = {re0[i], im0[i]};
            zy0[i] = {cr[i], ci[i]};
        }
        auto zy1 = zy0;
        sc.zaxpy({0.2, -1.1}, zx.data(), zy0.data(), n);
        vx.zaxpy({0.2, -1.1}, zx.data(), zy1.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(zy0[i] == zy1[i]);
    }
}

TEST_CASE("dot reductions agree to rounding")
{
    if (!kern::avx2_available()) return;
    for (std::size_t n : {std::size_t(5), std::size_t(64), std::size_t(1001)}) {
        auto x = random_vec(n, n + 77);
        auto y = random_vec(n, n + 78);
        const double a = kern::scalar_ops().dot(x.data(), y.data(), n);
        const double b = kern::avx2_ops().dot(x.data(), y.data(), n);
        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) scale += std::abs(x[i] * y[i]);
        CHECK(std::abs(a - b) <= 1e-13 * scale);
    }
}

TEST_CASE("dispatched table is one of the variants")
{
    const auto& t = kern::ops();
    const bool is_scalar = t.name == std::string("scalar");
    const bool is_avx2 = t.name == std::string("avx2");
    CHECK((is_scalar || is_avx2));
    if (is_avx2) CHECK(kern::avx2_available());
}
