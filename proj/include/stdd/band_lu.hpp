// SPDX-License-Identifier: Apache-2.0
//
// Complex banded LU with partial pivoting, LAPACK-style band storage:
// entry (i, j) lives at ab[j*ld + (kl + ku + i - j)], ld = 2*kl + ku + 1;
// the top kl rows hold fill-in from row interchanges.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace stdd {

class BandLU {
public:
    using cd = std::complex<double>;

    BandLU() = default;

    void init(std::size_t n, std::size_t kl, std::size_t ku);

    // Valid before factor() for max(0,j-ku) <= i <= min(n-1,j+kl).
    cd& at(std::size_t i, std::size_t j) { return ab_[j * ld_ + (kl_ + ku_ + i - j)]; }

    void factor();  // throws SolverError on an exactly singular pivot

    void solve(cd* b) const;                                  // single RHS, in place
    void solve_many(cd* b, std::size_t nrhs, std::size_t ldb) const;  // column-major RHS block

    std::size_t size() const { return n_; }
    bool factored() const { return factored_; }

private:
    std::size_t n_ = 0, kl_ = 0, ku_ = 0, ld_ = 0;
    std::vector<cd> ab_;
    std::vector<std::size_t> piv_;
    bool factored_ = false;
};

}  // namespace stdd
