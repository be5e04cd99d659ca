// SPDX-License-Identifier: Apache-2.0
//
// Named verification suites runnable from the CLI: each runs its checks at
// fixed desk-scale sizes, prints per-check margins, and reports pass/fail.
#pragma once

#include <string>

#include "stdd/fields.hpp"
#include "stdd/solver.hpp"

namespace stdd {

struct VerifyOutcome {
    bool pass = true;
    std::string log;  // one line per check, margins included
};

// suite: fractime | coercivity | equivalence | cayley | all
VerifyOutcome verify_suite(const std::string& suite, int workers);

// Applies cos(phi) I - sin(phi) H along the time axis of a field. The
// frequency symbol is cos(phi) + i sin(phi) sgn(xi) per mode; at the
// sgn = 0 modes (mean, Nyquist) the Hilbert part vanishes and the symbol
// degenerates to cos(phi).
template <class Tag>
FieldT<Tag> apply_h_phi(const FieldT<Tag>& u, double phi)
{
    SpectrumT<Tag> s = forward_fft(u);
    const FrequencySymbols sym = FrequencySymbols::make(u.grid);
    for (std::size_t k = 0; k < u.grid.n_t; ++k) {
        const double c = std::cos(phi);
        const double si = std::sin(phi) * sym.sgn[k];
        double* re = s.re_row(k);
        double* im = s.im_row(k);
        for (std::size_t j = 0; j < u.cols; ++j) {
            const double r = c * re[j] - si * im[j];
            const double m = c * im[j] + si * re[j];
            re[j] = r;
            im[j] = m;
        }
    }
    return inverse_fft(std::move(s));
}

}  // namespace stdd
