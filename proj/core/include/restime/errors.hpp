#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace restime {

/// Raised when a constructor or operation receives parameters outside their
/// admissible range. Nothing partially built escapes a throwing constructor.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A defect bias that would push a hop probability onto or beyond {0, 1}.
class BiasOutOfRange : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Two independent evaluation routes disagreed beyond their tolerance.
class NumericalCheckError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Monte Carlo run produced no trajectory usable for the conditioned
/// estimate.
class EstimationError : public std::runtime_error {
public:
    EstimationError(const std::string& what, std::uint64_t n_right, std::uint64_t n_left)
        : std::runtime_error(what), n_right_(n_right), n_left_(n_left) {}

    std::uint64_t n_right() const noexcept { return n_right_; }
    std::uint64_t n_left() const noexcept { return n_left_; }

private:
    std::uint64_t n_right_;
    std::uint64_t n_left_;
};

/// Iterative search stopped at its cap; the best point found is kept by the
/// caller-facing result type.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace restime
