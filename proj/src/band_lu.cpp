// SPDX-License-Identifier: Apache-2.0

#include "stdd/band_lu.hpp"

#include <algorithm>
#include <cmath>

#include "stdd/errors.hpp"
#include "stdd/kernels.hpp"

namespace stdd {

void BandLU::init(std::size_t n, std::size_t kl, std::size_t ku)
{
    n_ = n;
    kl_ = kl;
    ku_ = ku;
    ld_ = 2 * kl + ku + 1;
    ab_.assign(ld_ * n, cd(0.0, 0.0));
    piv_.assign(n, 0);
    factored_ = false;
}

void BandLU::factor()
{
    const auto& k = kern::ops();
    const std::size_t d = kl_ + ku_;  // band row of the diagonal
    for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t km = std::min(kl_, n_ - 1 - j);  // subdiagonals in column j
        // partial pivot among rows j..j+km
        std::size_t p = 0;
        double best = std::abs(ab_[j * ld_ + d]);
        for (std::size_t q = 1; q <= km; ++q) {
            const double mag = std::abs(ab_[j * ld_ + d + q]);
            if (mag > best) {
                best = mag;
                p = q;
            }
        }
        piv_[j] = j + p;
        if (best == 0.0) throw SolverError("BandLU: singular pivot", static_cast<long>(j));
        const std::size_t cmax = std::min(n_ - 1, j + ku_ + kl_);
        if (p != 0) {
            for (std::size_t c = j; c <= cmax; ++c)
                std::swap(ab_[c * ld_ + d + j - c], ab_[c * ld_ + d + j + p - c]);
        }
        const cd piv = ab_[j * ld_ + d];
        for (std::size_t q = 1; q <= km; ++q) ab_[j * ld_ + d + q] /= piv;
        if (km == 0) continue;
        // rank-1 trailing update, one contiguous axpy per band column
        for (std::size_t c = j + 1; c <= cmax; ++c) {
            const cd ajc = ab_[c * ld_ + d + j - c];
            if (ajc == cd(0.0, 0.0)) continue;
            k.zaxpy(-ajc, &ab_[j * ld_ + d + 1], &ab_[c * ld_ + d + j - c + 1], km);
        }
    }
    factored_ = true;
}

void BandLU::solve(cd* b) const
{
    const auto& k = kern::ops();
    const std::size_t d = kl_ + ku_;
    for (std::size_t j = 0; j < n_; ++j) {
        if (piv_[j] != j) std::swap(b[j], b[piv_[j]]);
        const std::size_t km = std::min(kl_, n_ - 1 - j);
        if (km > 0) k.zaxpy(-b[j], &ab_[j * ld_ + d + 1], &b[j + 1], km);
    }
    for (std::size_t jj = n_; jj-- > 0;) {
        b[jj] /= ab_[jj * ld_ + d];
        const std::size_t len = std::min(kl_ + ku_, jj);
        if (len > 0) k.zaxpy(-b[jj], &ab_[jj * ld_ + d - len], &b[jj - len], len);
    }
}

void BandLU::solve_many(cd* b, std::size_t nrhs, std::size_t ldb) const
{
    for (std::size_t r = 0; r < nrhs; ++r) solve(b + r * ldb);
}

}  // namespace stdd
