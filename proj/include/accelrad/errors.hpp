#pragma once

#include <stdexcept>
#include <string>

namespace accelrad {

/// Argument outside the mathematical domain of an operation (poles, log of
/// non-positive numbers, missing stationary points).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A documented precondition on the inputs was violated.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative method or quadrature did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Probability mass reached the top of a truncated Fock space.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace accelrad
