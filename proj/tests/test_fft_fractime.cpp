// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "stdd/errors.hpp"
#include "stdd/fft.hpp"
#include "stdd/fractime.hpp"
#include "stdd/time_grid.hpp"

using namespace stdd;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

// O(n^2) direct summation DFT, the independent oracle for every FFT check
std::vector<cd> direct_dft(const std::vector<double>& x)
{
    const std::size_t n = x.size();
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cd acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            acc += x[j] * std::polar(1.0, -2.0 * pi * double(j) * double(k) / double(n));
        out[k] = acc;
    }
    return out;
}

TimeSignal random_signal(const TimeGrid& g, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(0.0, 1.0);
    TimeSignal v(g);
    for (auto& x : v.values) x = d(rng);
    return v;
}

double l2(const TimeSignal& v) { return hs_norm(v, 0.0); }

}  // namespace

TEST_CASE("fft matches the direct DFT oracle")
{
    for (std::size_t n : {std::size_t(16), std::size_t(64)}) {
        const TimeGrid g = TimeGrid::make(n, 4.0);
        const TimeSignal v = random_signal(g, 5 + n);
        const auto oracle = direct_dft(v.values);
        const auto got = spectrum(v);
        double scale = 0.0;
        for (auto c : oracle) scale = std::max(scale, std::abs(c));
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(got[k] - oracle[k]) <= 1e-12 * scale);
        // round trip
        const TimeSignal back = signal_from_spectrum(g, got);
        for (std::size_t j = 0; j < n; ++j)
            CHECK(back.values[j] == doctest::Approx(v.values[j]).epsilon(1e-13));
    }
}

TEST_CASE("batched fft equals column-wise fft")
{
    const TimeGrid g = TimeGrid::make(32, 2.0);
    const std::size_t cols = 7;
    std::vector<double> re(g.n_t * cols), im(g.n_t * cols, 0.0);
    std::mt19937_64 rng(99);
    std::normal_distribution<double> d(0.0, 1.0);
    for (auto& x : re) x = d(rng);
    std::vector<double> re_batch = re, im_batch = im;
    fft_plan(g.n_t).forward(re_batch.data(), im_batch.data(), cols);
    for (std::size_t c = 0; c < cols; ++c) {
        std::vector<double> col(g.n_t);
        for (std::size_t t = 0; t < g.n_t; ++t) col[t] = re[t * cols + c];
        const auto oracle = direct_dft(col);
        for (std::size_t k = 0; k < g.n_t; ++k) {
            CHECK(re_batch[k * cols + c] == doctest::Approx(oracle[k].real()).epsilon(1e-12));
            CHECK(im_batch[k * cols + c]
                  == doctest::Approx(oracle[k].imag()).scale(std::abs(oracle[k]) + 1.0)
                         .epsilon(1e-12));
        }
    }
}

TEST_CASE("frequency symbols")
{
    const TimeGrid g = TimeGrid::make(16, 8.0);
    const auto sym = FrequencySymbols::make(g);
    CHECK(sym.xi[0] == 0.0);
    CHECK(sym.xi[1] == doctest::Approx(2.0 * pi / 8.0));
    CHECK(sym.xi[15] == doctest::Approx(-2.0 * pi / 8.0));
    CHECK(sym.sgn[0] == 0.0);
    CHECK(sym.sgn[8] == 0.0);  // Nyquist convention
    CHECK(sym.sqrt_i_xi[0] == cd(0.0, 0.0));
    for (std::size_t k = 1; k < 16; ++k) {
        if (k == 8) continue;  // Nyquist is the documented exception
        const cd sq = sym.sqrt_i_xi[k] * sym.sqrt_i_xi[k];
        CHECK(sq.real() == 0.0);  // exact by construction
        CHECK(sq.imag() == doctest::Approx(sym.xi[k]).epsilon(1e-15));
        // conjugate symmetry across +-xi
        CHECK(sym.sqrt_i_xi[k] == std::conj(sym.sqrt_i_xi[16 - k]));
    }
    // Nyquist: real sqrt(|xi|), sigma = |xi|
    CHECK(sym.sqrt_i_xi[8].imag() == 0.0);
    CHECK(sym.sigma[8] == cd(std::abs(sym.xi[8]), 0.0));
}

TEST_CASE("hilbert examples")
{
    const TimeGrid g = TimeGrid::make(64, 4.0);
    TimeSignal v(g);
    for (std::size_t j = 0; j < g.n_t; ++j) v.values[j] = std::cos(2.0 * pi * g.time(j) / 4.0);
    const TimeSignal h = hilbert(v);
    for (std::size_t j = 0; j < g.n_t; ++j)
        CHECK(std::abs(h.values[j] - std::sin(2.0 * pi * g.time(j) / 4.0)) <= 1e-12);

    TimeSignal ones(g);
    for (auto& x : ones.values) x = 1.0;
    for (double x : hilbert(ones).values) CHECK(std::abs(x) <= 1e-14);

    // twice the transform folds back to -(v - mean v), Nyquist-free input
    const TimeSignal r = random_band_limited(g, 321);
    const TimeSignal hh = hilbert(hilbert(r));
    const double m = mean(r);
    for (std::size_t j = 0; j < g.n_t; ++j)
        CHECK(hh.values[j] == doctest::Approx(-(r.values[j] - m)).epsilon(1e-12).scale(1.0));

    TimeSignal bad(g);
    bad.values.pop_back();
    CHECK_THROWS_AS(hilbert(bad), ContractError);
}

TEST_CASE("hilbert is an L2 isometry on mean-free signals")
{
    const TimeGrid g = TimeGrid::make(128, 8.0);
    TimeSignal v = random_band_limited(g, 17, 0, false);
    CHECK(l2(hilbert(v)) == doctest::Approx(l2(v)).epsilon(1e-12));
}

TEST_CASE("half derivative examples")
{
    const double T = 4.0;
    const TimeGrid g = TimeGrid::make(64, T);
    const double om = 2.0 * pi / T;
    TimeSignal v(g);
    for (std::size_t j = 0; j < g.n_t; ++j) v.values[j] = std::cos(om * g.time(j));
    const TimeSignal d = half_derivative(v, HalfDerivativeBranch::plus);
    for (std::size_t j = 0; j < g.n_t; ++j)
        CHECK(std::abs(d.values[j] - std::sqrt(om) * std::cos(om * g.time(j) + pi / 4.0))
              <= 1e-12);

    TimeSignal c(g);
    for (auto& x : c.values) x = 3.5;
    for (double x : half_derivative(c, HalfDerivativeBranch::plus).values)
        CHECK(std::abs(x) <= 1e-14);

    // plus branch twice = spectral time derivative on band-limited input
    const TimeSignal r = random_band_limited(g, 88);
    const TimeSignal twice =
        half_derivative(half_derivative(r, HalfDerivativeBranch::plus), HalfDerivativeBranch::plus);
    const TimeSignal dr = spectral_derivative(r);
    for (std::size_t j = 0; j < g.n_t; ++j)
        CHECK(twice.values[j] == doctest::Approx(dr.values[j]).epsilon(1e-11).scale(l2(dr) + 1.0));
}

TEST_CASE("h_phi examples")
{
    const TimeGrid g = TimeGrid::make(64, 4.0);
    const TimeSignal v = random_signal(g, 3);
    const TimeSignal id = h_phi(v, 0.0);
    for (std::size_t j = 0; j < g.n_t; ++j) CHECK(id.values[j] == v.values[j]);

    TimeSignal c(g);
    const double om = 2.0 * pi / 4.0;
    for (std::size_t j = 0; j < g.n_t; ++j) c.values[j] = std::cos(om * g.time(j));
    const TimeSignal q = h_phi(c, pi / 2.0);
    for (std::size_t j = 0; j < g.n_t; ++j)
        CHECK(std::abs(q.values[j] + std::sin(om * g.time(j))) <= 1e-12);

    // per-mode symbol check against the direct DFT oracle, phi = 0.1
    const double phi = 0.1;
    const TimeSignal hv = h_phi(v, phi);
    const auto sv = direct_dft(v.values);
    const auto sh = direct_dft(hv.values);
    const auto sym = FrequencySymbols::make(g);
    for (std::size_t k = 0; k < g.n_t; ++k) {
        const cd mult(std::cos(phi), std::sin(phi) * sym.sgn[k]);
        CHECK(std::abs(sh[k] - mult * sv[k]) <= 1e-10 * (std::abs(sv[k]) + 1.0));
    }

    CHECK_THROWS_AS(h_phi(v, -0.1), ParamError);
    CHECK_THROWS_AS(h_phi(v, 2.0), ParamError);
}

TEST_CASE("hs_norm examples")
{
    const double T = 4.0;
    const TimeGrid g = TimeGrid::make(64, T);
    const TimeSignal v = random_signal(g, 11);
    // s = 0 reproduces the discrete L2(0,T) norm
    double direct = 0.0;
    for (double x : v.values) direct += x * x;
    direct = std::sqrt(g.dt * direct);
    CHECK(hs_norm(v, 0.0) == doctest::Approx(direct).epsilon(1e-13));

    TimeSignal zero(g);
    for (double s : {0.0, 0.25, 0.5, 1.0}) CHECK(hs_norm(zero, s) == 0.0);

    TimeSignal c(g);
    const double om = 2.0 * pi / T;
    for (std::size_t j = 0; j < g.n_t; ++j) c.values[j] = std::cos(om * g.time(j));
    const double expected = std::pow(1.0 + om * om, 0.25) * hs_norm(c, 0.0);
    CHECK(hs_norm(c, 0.5) == doctest::Approx(expected).epsilon(1e-13));

    CHECK_THROWS_AS(hs_norm(v, -0.5), ParamError);
    CHECK_THROWS_AS(hs_norm(v, 1.5), ParamError);
}

TEST_CASE("Lemma-style identities at tight tolerance")
{
    for (std::size_t n : {std::size_t(64), std::size_t(256)}) {
        const TimeGrid g = TimeGrid::make(n, 8.0);
        for (int trial = 0; trial < 20; ++trial) {
            const TimeSignal v = random_band_limited(g, 40 + trial);
            const TimeSignal w = random_band_limited(g, 400 + trial);

            TimeSignal s1 = half_derivative(v, HalfDerivativeBranch::plus);
            const TimeSignal s2 = half_derivative(hilbert(v), HalfDerivativeBranch::minus);
            for (std::size_t j = 0; j < n; ++j) s1.values[j] += s2.values[j];
            CHECK(l2(s1) <= 1e-12 * l2(v));

            const double ip = l2_inner(half_derivative(v, HalfDerivativeBranch::plus),
                                       half_derivative(v, HalfDerivativeBranch::minus));
            const double h12 = hs_norm(v, 0.5);
            CHECK(std::abs(ip) <= 1e-12 * h12 * h12);

            const double a = l2_inner(spectral_derivative(v), w);
            const double b = l2_inner(half_derivative(v, HalfDerivativeBranch::plus),
                                      half_derivative(w, HalfDerivativeBranch::minus));
            CHECK(std::abs(a - b) <= 1e-10 * (std::abs(a) + l2(spectral_derivative(v)) * l2(w)));
        }
    }
}

TEST_CASE("equivalent norm bracket on H^{1/2}")
{
    const TimeGrid g = TimeGrid::make(128, 8.0);
    for (int trial = 0; trial < 50; ++trial) {
        const TimeSignal v = random_signal(g, 900 + trial);
        const double alt = std::sqrt(std::pow(l2(half_derivative(v, HalfDerivativeBranch::plus)), 2)
                                     + std::pow(l2(v), 2));
        const double ratio = alt / hs_norm(v, 0.5);
        CHECK(ratio >= 1.0 / std::sqrt(2.0) - 1e-12);
        CHECK(ratio <= std::sqrt(2.0) + 1e-12);
    }
}

TEST_CASE("grid validation")
{
    CHECK_THROWS_AS(TimeGrid::make(3, 1.0), ParamError);
    CHECK_THROWS_AS(TimeGrid::make(48, 1.0), ParamError);
    CHECK_THROWS_AS(TimeGrid::make(64, -1.0), ParamError);
    const TimeGrid g = TimeGrid::make(8, 2.0);
    CHECK(g.dt == 0.25);
    CHECK(g.period() == 2.0);
}
