// SPDX-License-Identifier: Apache-2.0
//
// Batched in-place radix-2 FFT on split-complex data.
//
// Layout: row-major [n x cols]; the transform runs along axis 0 (rows), all
// columns at once, so every butterfly is one kernel call on a contiguous row
// pair. Conventions: forward X_k = sum_j x_j e^{-2 pi i j k / n}; inverse
// applies the conjugate twiddles and scales by 1/n.
#pragma once

#include <cstddef>
#include <vector>

namespace stdd {

class FftPlan {
public:
    explicit FftPlan(std::size_t n);  // n power of two, n >= 2

    std::size_t size() const { return n_; }

    void forward(double* re, double* im, std::size_t cols) const;
    void inverse(double* re, double* im, std::size_t cols) const;

private:
    void transform(double* re, double* im, std::size_t cols, bool inv) const;

    std::size_t n_ = 0;
    std::vector<std::size_t> bitrev_;
    std::vector<double> tw_re_, tw_im_;     // stage-packed forward twiddles
    std::vector<std::size_t> stage_base_;   // twiddle offset per stage
};

// Process-wide plan cache (plans are immutable once built).
const FftPlan& fft_plan(std::size_t n);

}  // namespace stdd
