#pragma once

#include <stdexcept>
#include <string>

namespace legendre_fd {

/// Argument outside the mathematical domain of a function (|x| >= 1 for Q_n, x at a singularity).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid mesh, potential or run configuration.
class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Caller broke an API precondition (mismatched array length, index out of range).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Failure inside a solve, annotated with the eigenindex and step where it happened.
class NumericalError : public std::runtime_error {
public:
    NumericalError(int n, int step, const std::string& what)
        : std::runtime_error("n=" + std::to_string(n) + ", step " + std::to_string(step) + ": " + what),
          n_(n),
          step_(step) {}

    int n() const noexcept { return n_; }
    int step() const noexcept { return step_; }

private:
    int n_;
    int step_;
};

}  // namespace legendre_fd
