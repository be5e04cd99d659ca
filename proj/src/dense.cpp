// SPDX-License-Identifier: Apache-2.0

#include "stdd/dense.hpp"

#include <algorithm>
#include <cmath>

#include "stdd/errors.hpp"
#include "stdd/kernels.hpp"

namespace stdd {

using cd = std::complex<double>;

void DenseZ::matvec(const cd* x, cd* y) const
{
    const auto& k = kern::ops();
    std::fill(y, y + rows, cd(0.0, 0.0));
    for (std::size_t j = 0; j < cols; ++j) k.zaxpy(x[j], col(j), y, rows);
}

DenseZ DenseZ::matmul(const DenseZ& lhs, const DenseZ& rhs)
{
    DenseZ out(lhs.rows, rhs.cols);
    const auto& k = kern::ops();
    for (std::size_t j = 0; j < rhs.cols; ++j)
        for (std::size_t l = 0; l < rhs.rows; ++l)
            k.zaxpy(rhs.at(l, j), lhs.col(l), out.col(j), lhs.rows);
    return out;
}

DenseZ operator+(const DenseZ& x, const DenseZ& y)
{
    DenseZ out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
    return out;
}

DenseZ operator-(const DenseZ& x, const DenseZ& y)
{
    DenseZ out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] -= y.a[i];
    return out;
}

void DenseLU::factor(DenseZ m)
{
    lu_ = std::move(m);
    const std::size_t n = lu_.rows;
    piv_.assign(n, 0);
    const auto& k = kern::ops();
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t p = j;
        double best = std::abs(lu_.at(j, j));
        for (std::size_t i = j + 1; i < n; ++i) {
            const double mag = std::abs(lu_.at(i, j));
            if (mag > best) {
                best = mag;
                p = i;
            }
        }
        piv_[j] = p;
        if (best == 0.0) throw SolverError("DenseLU: singular pivot", static_cast<long>(j));
        // swap only the active columns; earlier multiplier columns stay put so
        // the solve can replay interchanges interleaved with the eliminations
        if (p != j)
            for (std::size_t c = j; c < n; ++c) std::swap(lu_.at(j, c), lu_.at(p, c));
        const cd piv = lu_.at(j, j);
        for (std::size_t i = j + 1; i < n; ++i) lu_.at(i, j) /= piv;
        for (std::size_t c = j + 1; c < n; ++c) {
            const cd ajc = lu_.at(j, c);
            if (ajc == cd(0.0, 0.0)) continue;
            k.zaxpy(-ajc, &lu_.at(j + 1, j), &lu_.at(j + 1, c), n - j - 1);
        }
    }
    factored_ = true;
}

void DenseLU::solve(cd* b) const
{
    const std::size_t n = lu_.rows;
    const auto& k = kern::ops();
    for (std::size_t j = 0; j < n; ++j) {
        if (piv_[j] != j) std::swap(b[j], b[piv_[j]]);
        if (j + 1 < n) k.zaxpy(-b[j], &lu_.at(j + 1, j), &b[j + 1], n - j - 1);
    }
    for (std::size_t jj = n; jj-- > 0;) {
        b[jj] /= lu_.at(jj, jj);
        if (jj > 0) k.zaxpy(-b[jj], &lu_.at(0, jj), &b[0], jj);
    }
}

void DenseLU::solve(DenseZ& b) const
{
    for (std::size_t j = 0; j < b.cols; ++j) solve(b.col(j));
}

std::vector<double> singular_values(DenseZ m)
{
    const std::size_t n = m.cols;
    const std::size_t r = m.rows;
    // One-sided Jacobi: rotate column pairs until all pairs are numerically
    // orthogonal; singular values are the remaining column norms.
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                cd g(0.0, 0.0);
                double a = 0.0, b = 0.0;
                for (std::size_t i = 0; i < r; ++i) {
                    const cd cp = m.at(i, p), cq = m.at(i, q);
                    g += std::conj(cp) * cq;
                    a += std::norm(cp);
                    b += std::norm(cq);
                }
                const double gm = std::abs(g);
                if (a == 0.0 || b == 0.0 || gm <= 1e-15 * std::sqrt(a * b)) continue;
                off = std::max(off, gm / std::sqrt(a * b));
                // absorb the phase into column q, then rotate as real columns
                const cd phase = g / gm;
                for (std::size_t i = 0; i < r; ++i) m.at(i, q) *= std::conj(phase);
                const double tau = (b - a) / (2.0 * gm);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (std::size_t i = 0; i < r; ++i) {
                    const cd cp = m.at(i, p), cq = m.at(i, q);
                    m.at(i, p) = cs * cp - sn * cq;
                    m.at(i, q) = sn * cp + cs * cq;
                }
            }
        }
        if (off < 1e-14) break;
    }
    std::vector<double> sv(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < r; ++i) s += std::norm(m.at(i, j));
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

double max_singular_value(const DenseZ& m)
{
    auto sv = singular_values(m);
    return sv.empty() ? 0.0 : sv.front();
}

bool cholesky(std::vector<double>& a, std::size_t n)
{
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t l = 0; l < j; ++l) d -= a[l * n + j] * a[l * n + j];
        if (!(d > 0.0)) return false;
        const double root = std::sqrt(d);
        a[j * n + j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[j * n + i];
            for (std::size_t l = 0; l < j; ++l) s -= a[l * n + i] * a[l * n + j];
            a[j * n + i] = s / root;
        }
        for (std::size_t i = 0; i < j; ++i) a[j * n + i] = 0.0;  // keep strict lower form
    }
    return true;
}

DenseZ weighted_similarity(const std::vector<double>& chol, std::size_t n, const DenseZ& b)
{
    // C = B * L, then solve L X = C column by column (forward substitution).
    DenseZ c(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            cd s(0.0, 0.0);
            for (std::size_t l = j; l < n; ++l) s += b.at(i, l) * chol[j * n + l];
            c.at(i, j) = s;
        }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            cd s = c.at(i, j);
            for (std::size_t l = 0; l < i; ++l) s -= chol[l * n + i] * c.at(l, j);
            c.at(i, j) = s / chol[i * n + i];
        }
    }
    return c;
}

}  // namespace stdd
