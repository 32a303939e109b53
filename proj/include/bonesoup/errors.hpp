#pragma once

#include <stdexcept>
#include <string>

namespace bonesoup {

// Config / input validation problems. CLI maps these to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical failures (singular systems, divergence, non-convergence).
// CLI maps these to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failures. CLI maps these to exit code 4.
struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : ConfigError {
    using ConfigError::ConfigError;
};

struct Singular : NumericalError {
    using NumericalError::NumericalError;
};

struct NonFiniteValue : NumericalError {
    using NumericalError::NumericalError;
};

struct NonConvergence : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace bonesoup
