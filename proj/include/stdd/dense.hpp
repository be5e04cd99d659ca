// SPDX-License-Identifier: Apache-2.0
//
// Small dense complex linear algebra for the interface systems: column-major
// matrices, LU with partial pivoting, one-sided Jacobi singular values, and
// a real Cholesky used for weighted norms and positive-definiteness checks.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace stdd {

struct DenseZ {
    using cd = std::complex<double>;
    std::size_t rows = 0, cols = 0;
    std::vector<cd> a;  // column-major

    DenseZ() = default;
    DenseZ(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, cd(0.0, 0.0)) {}

    cd& at(std::size_t i, std::size_t j) { return a[j * rows + i]; }
    const cd& at(std::size_t i, std::size_t j) const { return a[j * rows + i]; }
    cd* col(std::size_t j) { return a.data() + j * rows; }
    const cd* col(std::size_t j) const { return a.data() + j * rows; }

    // y = A x
    void matvec(const cd* x, cd* y) const;
    static DenseZ matmul(const DenseZ& lhs, const DenseZ& rhs);
};

DenseZ operator+(const DenseZ& x, const DenseZ& y);
DenseZ operator-(const DenseZ& x, const DenseZ& y);

class DenseLU {
public:
    using cd = std::complex<double>;

    DenseLU() = default;
    explicit DenseLU(DenseZ m) { factor(std::move(m)); }

    void factor(DenseZ m);      // throws SolverError on singular pivot
    void solve(cd* b) const;    // in place
    void solve(DenseZ& b) const;
    std::size_t size() const { return lu_.rows; }
    bool factored() const { return factored_; }

private:
    DenseZ lu_;
    std::vector<std::size_t> piv_;
    bool factored_ = false;
};

// Singular values by one-sided Jacobi, descending order.
std::vector<double> singular_values(DenseZ m);
double max_singular_value(const DenseZ& m);

// In-place lower Cholesky of a symmetric positive definite matrix given
// column-major; returns false when a pivot is not strictly positive.
bool cholesky(std::vector<double>& a, std::size_t n);

// With m = L L^T from cholesky(), returns op(B) = L^{-1} B L for square
// complex B (the similarity used by weighted operator norms).
DenseZ weighted_similarity(const std::vector<double>& chol, std::size_t n, const DenseZ& b);

}  // namespace stdd
