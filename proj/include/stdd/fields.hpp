// SPDX-License-Identifier: Apache-2.0
//
// Real sample arrays on (time x columns) plus their frequency-domain
// counterparts. Row-major with the time/mode index as the row, so one row is
// one time sample (or one frequency mode) across all columns — the layout
// the batched FFT and the per-mode solves both want.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "stdd/errors.hpp"
#include "stdd/fft.hpp"
#include "stdd/time_grid.hpp"

namespace stdd {

template <class Tag>
struct FieldT {
    TimeGrid grid;
    std::size_t cols = 0;
    std::vector<double> v;  // n_t x cols

    FieldT() = default;
    FieldT(const TimeGrid& g, std::size_t c) : grid(g), cols(c), v(g.n_t * c, 0.0) {}

    double* row(std::size_t t) { return v.data() + t * cols; }
    const double* row(std::size_t t) const { return v.data() + t * cols; }
    double& at(std::size_t t, std::size_t c) { return v[t * cols + c]; }
    double at(std::size_t t, std::size_t c) const { return v[t * cols + c]; }
};

template <class Tag>
struct SpectrumT {
    TimeGrid grid;
    std::size_t cols = 0;
    std::vector<double> re, im;  // n_t x cols each

    SpectrumT() = default;
    SpectrumT(const TimeGrid& g, std::size_t c)
        : grid(g), cols(c), re(g.n_t * c, 0.0), im(g.n_t * c, 0.0) {}

    double* re_row(std::size_t k) { return re.data() + k * cols; }
    double* im_row(std::size_t k) { return im.data() + k * cols; }
    const double* re_row(std::size_t k) const { return re.data() + k * cols; }
    const double* im_row(std::size_t k) const { return im.data() + k * cols; }

    void mode(std::size_t k, std::complex<double>* out) const
    {
        for (std::size_t c = 0; c < cols; ++c) out[c] = {re[k * cols + c], im[k * cols + c]};
    }
    std::vector<std::complex<double>> mode(std::size_t k) const
    {
        std::vector<std::complex<double>> out(cols);
        mode(k, out.data());
        return out;
    }
    void set_mode(std::size_t k, const std::complex<double>* in)
    {
        for (std::size_t c = 0; c < cols; ++c) {
            re[k * cols + c] = in[c].real();
            im[k * cols + c] = in[c].imag();
        }
    }

    // Fills rows above Nyquist with the conjugate of their mirror mode, the
    // spectrum of a real field; rows 0..n/2 must already be set.
    void mirror_upper()
    {
        const std::size_t n = grid.n_t;
        for (std::size_t k = 1; k < n / 2; ++k) {
            for (std::size_t c = 0; c < cols; ++c) {
                re[(n - k) * cols + c] = re[k * cols + c];
                im[(n - k) * cols + c] = -im[k * cols + c];
            }
        }
    }

    // Parseval multiplicity of mode k when summing only k = 0..n/2.
    double mult(std::size_t k) const { return (k == 0 || k == grid.n_t / 2) ? 1.0 : 2.0; }
};

struct SpaceTag {};
struct GammaTag {};
using SpaceTimeField = FieldT<SpaceTag>;
using InterfaceField = FieldT<GammaTag>;
using SpaceSpectrum = SpectrumT<SpaceTag>;
using InterfaceSpectrum = SpectrumT<GammaTag>;

template <class Tag>
SpectrumT<Tag> forward_fft(const FieldT<Tag>& f)
{
    SpectrumT<Tag> s(f.grid, f.cols);
    s.re = f.v;
    if (f.cols > 0) fft_plan(f.grid.n_t).forward(s.re.data(), s.im.data(), f.cols);
    return s;
}

// Real part of the inverse transform (imaginary residue is roundoff for
// conjugate-symmetric spectra).
template <class Tag>
FieldT<Tag> inverse_fft(SpectrumT<Tag> s)
{
    if (s.cols > 0) fft_plan(s.grid.n_t).inverse(s.re.data(), s.im.data(), s.cols);
    FieldT<Tag> f(s.grid, s.cols);
    f.v = std::move(s.re);
    return f;
}

template <class Tag>
void check_field(const FieldT<Tag>& f, std::size_t expect_cols, const char* where)
{
    if (f.cols != expect_cols || f.v.size() != f.grid.n_t * f.cols)
        throw ContractError(std::string(where) + ": field shape mismatch");
}

}  // namespace stdd
