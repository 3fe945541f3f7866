#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace supragrid {

/// Argument outside the mathematical domain of an operation (x outside [0, ell], log of a non-positive ratio, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed construction parameters (N < 2, negative beta, mismatched array lengths, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Forward elimination hit a pivot whose magnitude is below the breakdown threshold.
class PivotError : public std::runtime_error {
public:
    PivotError(std::size_t index, double pivot)
        : std::runtime_error("tridiagonal solve: pivot breakdown at row " + std::to_string(index) +
                             " (pivot = " + std::to_string(pivot) + ")"),
          index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// A fixed-point iteration exhausted its budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double final_update)
        : std::runtime_error(what + " (final update = " + std::to_string(final_update) + ")"),
          final_update_(final_update) {}

    double final_update() const noexcept { return final_update_; }

private:
    double final_update_;
};

/// A grid lost strict monotonicity (some step h_{j+1/2} <= 0).
class MonotonicityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace supragrid
