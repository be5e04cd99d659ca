// SPDX-License-Identifier: Apache-2.0
//
// FFT-based temporal operators on periodic signals: Hilbert transform,
// half-derivatives, the rotated operator H^phi = cos(phi) I - sin(phi) H,
// and discrete H^s norms. All operators are Fourier multipliers; outputs
// are real by the sign conventions in FrequencySymbols.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "stdd/time_grid.hpp"

namespace stdd {

enum class HalfDerivativeBranch { plus, minus };

// Multiplier -i*sgn(xi); annihilates the mean and the Nyquist mode.
TimeSignal hilbert(const TimeSignal& v);

// Multiplier sqrt(i*xi) (plus) or its conjugate (minus).
TimeSignal half_derivative(const TimeSignal& v, HalfDerivativeBranch branch);

// cos(phi)*v - sin(phi)*hilbert(v), phi in [0, pi/2].
TimeSignal h_phi(const TimeSignal& v, double phi);

// Multiplier i*xi (zero at the Nyquist mode).
TimeSignal spectral_derivative(const TimeSignal& v);

// ( sum_k (1 + xi_k^2)^s |V_k|^2 * dt/n_t )^{1/2}; s = 0 reproduces the
// discrete L^2(0,T) norm. Requires s in [0, 1].
double hs_norm(const TimeSignal& v, double s);

double l2_inner(const TimeSignal& a, const TimeSignal& b);  // dt * sum a_j b_j
double mean(const TimeSignal& v);

// Full complex spectrum of a real signal (forward DFT).
std::vector<std::complex<double>> spectrum(const TimeSignal& v);
TimeSignal signal_from_spectrum(const TimeGrid& grid,
                                const std::vector<std::complex<double>>& coeff);

// Seeded random signal whose spectrum is supported on 1 <= |k| <= k_max
// (plus an optional mean), the discrete stand-in for a smooth function on
// the real line; k_max = 0 picks n_t/4.
TimeSignal random_band_limited(const TimeGrid& grid, std::uint64_t seed,
                               std::size_t k_max = 0, bool with_mean = true);

}  // namespace stdd
