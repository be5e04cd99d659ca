// SPDX-License-Identifier: Apache-2.0

#include "stdd/fft.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "stdd/errors.hpp"
#include "stdd/kernels.hpp"

namespace stdd {

FftPlan::FftPlan(std::size_t n) : n_(n)
{
    if (n < 2 || !std::has_single_bit(n))
        throw ParamError("FftPlan: size must be a power of two >= 2");

    bitrev_.resize(n);
    const int log2n = std::countr_zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (int b = 0; b < log2n; ++b) r |= ((i >> b) & 1u) << (log2n - 1 - b);
        bitrev_[i] = r;
    }

    // Twiddles w_j = e^{-2 pi i j / len} packed stage by stage (len = 2,4,..,n).
    tw_re_.reserve(n - 1);
    tw_im_.reserve(n - 1);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        stage_base_.push_back(tw_re_.size());
        const std::size_t half = len / 2;
        for (std::size_t j = 0; j < half; ++j) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(j)
                               / static_cast<double>(len);
            tw_re_.push_back(std::cos(ang));
            tw_im_.push_back(std::sin(ang));
        }
    }
}

void FftPlan::transform(double* re, double* im, std::size_t cols, bool inv) const
{
    const auto& k = kern::ops();

    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t r = bitrev_[i];
        if (r > i) {
            std::swap_ranges(re + i * cols, re + (i + 1) * cols, re + r * cols);
            std::swap_ranges(im + i * cols, im + (i + 1) * cols, im + r * cols);
        }
    }

    std::size_t stage = 0;
    for (std::size_t len = 2; len <= n_; len <<= 1, ++stage) {
        const std::size_t half = len / 2;
        const std::size_t base = stage_base_[stage];
        for (std::size_t start = 0; start < n_; start += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const double wr = tw_re_[base + j];
                const double wi = inv ? -tw_im_[base + j] : tw_im_[base + j];
                const std::size_t r0 = start + j;
                const std::size_t r1 = start + j + half;
                k.butterfly(re + r0 * cols, im + r0 * cols,
                            re + r1 * cols, im + r1 * cols, wr, wi, cols);
            }
        }
    }

    if (inv) {
        const double scale = 1.0 / static_cast<double>(n_);
        k.scal(scale, re, n_ * cols);
        k.scal(scale, im, n_ * cols);
    }
}

void FftPlan::forward(double* re, double* im, std::size_t cols) const
{
    transform(re, im, cols, false);
}

void FftPlan::inverse(double* re, double* im, std::size_t cols) const
{
    transform(re, im, cols, true);
}

const FftPlan& fft_plan(std::size_t n)
{
    static std::mutex mtx;
    static std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
    std::lock_guard<std::mutex> g(mtx);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<FftPlan>(n)).first;
    return *it->second;
}

}  // namespace stdd
