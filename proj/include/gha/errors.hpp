#pragma once

#include <stdexcept>
#include <string>

namespace gha {

// Argument outside the mathematical domain of an operation
// (label outside the convergence disc, x < 0 under a root, pole hit, ...).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Index outside a precomputed range (ladder shorter than requested).
struct range_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Truncation dimension too small for the requested tail tolerance.
// required_dim carries an estimate of a sufficient dimension (-1 if unknown).
struct truncation_error : std::runtime_error {
    int required_dim;
    explicit truncation_error(const std::string& msg, int required = -1)
        : std::runtime_error(msg), required_dim(required) {}
};

// Quadrature or series summation did not reach the requested accuracy.
struct accuracy_error : std::runtime_error {
    double error_estimate;
    explicit accuracy_error(const std::string& msg, double estimate)
        : std::runtime_error(msg), error_estimate(estimate) {}
};

// The requested check has no implementation for this spectrum family
// (e.g. completeness for the q-deformed oscillator with q < 1).
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gha
