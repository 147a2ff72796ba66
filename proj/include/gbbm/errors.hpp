#pragma once

#include <stdexcept>
#include <string>

namespace gbbm {

/// Violated precondition (size mismatch, bad argument, grid mismatch).
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// exp(σ|ξ|) would leave the safe double range for the requested σ and grid.
struct OverflowGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed-point iteration failed to contract or to converge.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
    double ratio = 0.0;
};

/// Non-finite values or norm growth past the blow-up guard.
struct BlowUpError : std::runtime_error {
    using std::runtime_error::runtime_error;
    double t = 0.0;
};

/// Spectral tail too short to fit a decay rate.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gbbm
