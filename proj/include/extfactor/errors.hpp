#pragma once

#include <stdexcept>
#include <string>

namespace extfactor {

/// Inputs outside the domain of a computation (alpha <= 1, m <= 0, rho out of range, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Endpoints of a bracket do not straddle a sign change.
class BracketError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A fixed-point iterate left the interval the map was declared to preserve.
class DomainViolation : public std::runtime_error {
public:
    DomainViolation(const std::string& what, double iterate)
        : std::runtime_error(what), iterate_(iterate) {}
    double iterate() const noexcept { return iterate_; }

private:
    double iterate_;
};

/// An iterative solve failed to reach tolerance. Carries the best iterate found.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double best_iterate)
        : std::runtime_error(what), best_iterate_(best_iterate) {}
    double best_iterate() const noexcept { return best_iterate_; }

private:
    double best_iterate_;
};

class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Schedule would overflow the sample-size integer type.
class SizeError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

}  // namespace extfactor
