// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace stdd {

// Invalid user-facing parameter (out-of-range value, unknown name).
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Broken internal call contract (shape or grid mismatch between modules).
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// Numerical failure that cannot occur on valid inputs; carries the
// offending frequency index when one exists.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg, long mode = -1)
        : std::runtime_error(mode >= 0 ? msg + " (mode " + std::to_string(mode) + ")" : msg),
          mode_index(mode) {}
    long mode_index;
};

}  // namespace stdd
