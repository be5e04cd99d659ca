// SPDX-License-Identifier: Apache-2.0

#include "stdd/fractime.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "stdd/errors.hpp"
#include "stdd/fft.hpp"
#include "stdd/kernels.hpp"

namespace stdd {

namespace {

struct Spectrum {
    std::vector<double> re, im;
};

Spectrum forward(const TimeSignal& v)
{
    Spectrum s;
    s.re = v.values;
    s.im.assign(v.grid.n_t, 0.0);
    fft_plan(v.grid.n_t).forward(s.re.data(), s.im.data(), 1);
    return s;
}

TimeSignal inverse_real(const TimeGrid& grid, Spectrum& s)
{
    fft_plan(grid.n_t).inverse(s.re.data(), s.im.data(), 1);
    return TimeSignal(grid, std::move(s.re));
}

// Applies a per-mode multiplier m(k) given as split arrays.
TimeSignal apply_multiplier(const TimeSignal& v, const std::vector<double>& mr,
                            const std::vector<double>& mi, const char* where)
{
    check_signal(v, where);
    Spectrum s = forward(v);
    for (std::size_t k = 0; k < v.grid.n_t; ++k) {
        const double r = mr[k] * s.re[k] - mi[k] * s.im[k];
        const double i = mr[k] * s.im[k] + mi[k] * s.re[k];
        s.re[k] = r;
        s.im[k] = i;
    }
    return inverse_real(v.grid, s);
}

}  // namespace

TimeSignal hilbert(const TimeSignal& v)
{
    const auto sym = FrequencySymbols::make(v.grid);
    std::vector<double> mr(v.grid.n_t, 0.0), mi(v.grid.n_t);
    for (std::size_t k = 0; k < v.grid.n_t; ++k) mi[k] = -sym.sgn[k];
    return apply_multiplier(v, mr, mi, "hilbert");
}

TimeSignal half_derivative(const TimeSignal& v, HalfDerivativeBranch branch)
{
    const auto sym = FrequencySymbols::make(v.grid);
    std::vector<double> mr(v.grid.n_t), mi(v.grid.n_t);
    for (std::size_t k = 0; k < v.grid.n_t; ++k) {
        const auto m = branch == HalfDerivativeBranch::plus ? sym.sqrt_i_xi[k]
                                                            : std::conj(sym.sqrt_i_xi[k]);
        mr[k] = m.real();
        mi[k] = m.imag();
    }
    return apply_multiplier(v, mr, mi, "half_derivative");
}

TimeSignal h_phi(const TimeSignal& v, double phi)
{
    if (!(phi >= 0.0 && phi <= std::numbers::pi / 2.0))
        throw ParamError("h_phi: phi must lie in [0, pi/2]");
    check_signal(v, "h_phi");
    TimeSignal h = hilbert(v);
    TimeSignal out(v.grid);
    const double c = std::cos(phi), s = std::sin(phi);
    for (std::size_t j = 0; j < v.grid.n_t; ++j)
        out.values[j] = c * v.values[j] - s * h.values[j];
    return out;
}

TimeSignal spectral_derivative(const TimeSignal& v)
{
    const auto sym = FrequencySymbols::make(v.grid);
    std::vector<double> mr(v.grid.n_t, 0.0), mi(v.grid.n_t, 0.0);
    for (std::size_t k = 0; k < v.grid.n_t; ++k)
        if (k != sym.nyquist_index()) mi[k] = sym.xi[k];
    return apply_multiplier(v, mr, mi, "spectral_derivative");
}

double hs_norm(const TimeSignal& v, double s)
{
    if (!(s >= 0.0 && s <= 1.0)) throw ParamError("hs_norm: order s must lie in [0, 1]");
    check_signal(v, "hs_norm");
    const auto sym = FrequencySymbols::make(v.grid);
    Spectrum sp = forward(v);
    const double w = v.grid.parseval_weight();
    double acc = 0.0;
    for (std::size_t k = 0; k < v.grid.n_t; ++k) {
        const double mag2 = sp.re[k] * sp.re[k] + sp.im[k] * sp.im[k];
        acc += std::pow(1.0 + sym.xi[k] * sym.xi[k], s) * mag2;
    }
    return std::sqrt(acc * w);
}

double l2_inner(const TimeSignal& a, const TimeSignal& b)
{
    check_signal(a, "l2_inner");
    check_signal(b, "l2_inner");
    if (!(a.grid == b.grid)) throw ContractError("l2_inner: grids differ");
    return a.grid.dt * kern::ops().dot(a.values.data(), b.values.data(), a.values.size());
}

double mean(const TimeSignal& v)
{
    check_signal(v, "mean");
    double s = 0.0;
    for (double x : v.values) s += x;
    return s / static_cast<double>(v.grid.n_t);
}

std::vector<std::complex<double>> spectrum(const TimeSignal& v)
{
    check_signal(v, "spectrum");
    Spectrum s = forward(v);
    std::vector<std::complex<double>> out(v.grid.n_t);
    for (std::size_t k = 0; k < v.grid.n_t; ++k) out[k] = {s.re[k], s.im[k]};
    return out;
}

TimeSignal signal_from_spectrum(const TimeGrid& grid,
                                const std::vector<std::complex<double>>& coeff)
{
    if (coeff.size() != grid.n_t)
        throw ContractError("signal_from_spectrum: coefficient count does not match grid");
    Spectrum s;
    s.re.resize(grid.n_t);
    s.im.resize(grid.n_t);
    for (std::size_t k = 0; k < grid.n_t; ++k) {
        s.re[k] = coeff[k].real();
        s.im[k] = coeff[k].imag();
    }
    return inverse_real(grid, s);
}

TimeSignal random_band_limited(const TimeGrid& grid, std::uint64_t seed,
                               std::size_t k_max, bool with_mean)
{
    const std::size_t n = grid.n_t;
    if (k_max == 0) k_max = n / 4;
    if (k_max >= n / 2) throw ParamError("random_band_limited: k_max must be below Nyquist");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::complex<double>> coeff(n, {0.0, 0.0});
    if (with_mean) coeff[0] = {normal(rng) * static_cast<double>(n), 0.0};
    for (std::size_t k = 1; k <= k_max; ++k) {
        const std::complex<double> c{normal(rng), normal(rng)};
        // conjugate-symmetric spectrum of a real signal; scale by n so that
        // sample values are O(1)
        coeff[k] = c * (static_cast<double>(n) / 2.0);
        coeff[n - k] = std::conj(coeff[k]);
    }
    return signal_from_spectrum(grid, coeff);
}

}  // namespace stdd
