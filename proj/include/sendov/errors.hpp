#pragma once

#include <stdexcept>
#include <string>

namespace sendov {

/// Iterative routine (root finder, continuation) failed to settle.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation that needs simple zeros of p and p' was handed clustered ones.
class MultipleRootError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Stated preconditions of a check do not hold for the given input.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Simplex breakdown or primal/dual disagreement. Never swallowed.
class LpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Critical-point labels could not be continued unambiguously.
class TrackingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sendov
