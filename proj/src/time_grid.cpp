// SPDX-License-Identifier: Apache-2.0

#include "stdd/time_grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "stdd/errors.hpp"

namespace stdd {

TimeGrid TimeGrid::make(std::size_t n_t, double T)
{
    if (n_t < 4 || !std::has_single_bit(n_t))
        throw ParamError("TimeGrid: n_t must be a power of two >= 4");
    if (!(T > 0.0) || !std::isfinite(T))
        throw ParamError("TimeGrid: period T must be positive and finite");
    TimeGrid g;
    g.n_t = n_t;
    g.dt = T / static_cast<double>(n_t);
    return g;
}

FrequencySymbols FrequencySymbols::make(const TimeGrid& grid)
{
    const std::size_t n = grid.n_t;
    const double T = grid.period();
    constexpr double pi = std::numbers::pi;
    constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;

    FrequencySymbols s;
    s.xi.resize(n);
    s.sgn.resize(n);
    s.sqrt_i_xi.resize(n);
    s.sigma.resize(n);

    for (std::size_t k = 0; k < n; ++k) {
        const long alias = (k < n / 2) ? static_cast<long>(k)
                                       : static_cast<long>(k) - static_cast<long>(n);
        const double xi = 2.0 * pi * static_cast<double>(alias) / T;
        const bool nyquist = (k == n / 2);
        s.xi[k] = xi;
        s.sgn[k] = (k == 0 || nyquist) ? 0.0 : (xi > 0.0 ? 1.0 : -1.0);
        const double r = std::sqrt(std::abs(xi));
        if (nyquist) {
            s.sqrt_i_xi[k] = {r, 0.0};
            s.sigma[k] = {std::abs(xi), 0.0};
        } else {
            // sqrt(|xi|) * e^{i pi sgn/4} with exactly equal components so
            // that the squared symbol has an exactly zero real part
            const double c = r * inv_sqrt2;
            s.sqrt_i_xi[k] = {c, s.sgn[k] * c};
            s.sigma[k] = {0.0, xi};
        }
    }
    return s;
}

void check_signal(const TimeSignal& v, const char* where)
{
    if (v.grid.n_t < 4 || v.values.size() != v.grid.n_t)
        throw ContractError(std::string(where) + ": signal length does not match its grid");
    for (double x : v.values)
        if (!std::isfinite(x))
            throw ContractError(std::string(where) + ": signal contains non-finite values");
}

}  // namespace stdd
