// SPDX-License-Identifier: Apache-2.0
//
// Uniform periodic time sampling and its angular-frequency ladder.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace stdd {

struct TimeGrid {
    std::size_t n_t = 0;  // sample count, power of two, >= 4
    double dt = 0.0;      // step in seconds

    double period() const { return static_cast<double>(n_t) * dt; }
    double time(std::size_t j) const { return static_cast<double>(j) * dt; }
    // Parseval weight: with X = DFT(x), dt*sum_j x_j^2 = w * sum_k |X_k|^2.
    double parseval_weight() const { return dt / static_cast<double>(n_t); }

    // Validates n_t (power of two, >= 4) and T > 0.
    static TimeGrid make(std::size_t n_t, double T);

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

// Angular frequencies xi_k = 2*pi*k~/T with k~ the signed alias of index k
// in [-n_t/2, n_t/2). Conventions: sgn(0) = 0; at the Nyquist index the sign
// is 0 and the half-derivative symbol is sqrt(|xi|) with zero phase, which
// keeps all operator outputs real at an O(1/n_t) consistency cost.
struct FrequencySymbols {
    std::vector<double> xi;
    std::vector<double> sgn;
    std::vector<std::complex<double>> sqrt_i_xi;  // principal branch sqrt(i*xi)
    // Heat symbol sigma_k = sqrt_i_xi[k]^2: i*xi_k away from Nyquist,
    // |xi| (real, coercive) at Nyquist, 0 at k = 0.
    std::vector<std::complex<double>> sigma;

    std::size_t nyquist_index() const { return xi.size() / 2; }

    static FrequencySymbols make(const TimeGrid& grid);
};

struct TimeSignal {
    TimeGrid grid;
    std::vector<double> values;

    TimeSignal() = default;
    explicit TimeSignal(const TimeGrid& g) : grid(g), values(g.n_t, 0.0) {}
    TimeSignal(const TimeGrid& g, std::vector<double> v) : grid(g), values(std::move(v)) {}
};

// Throws ContractError unless the signal length matches its grid and all
// values are finite.
void check_signal(const TimeSignal& v, const char* where);

}  // namespace stdd
