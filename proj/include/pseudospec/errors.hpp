#pragma once

#include <stdexcept>
#include <string>

namespace pseudospec {

/// Input outside the domain of an operation (bad N, Re(c) <= 0, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative method hit its cap or produced non-finite output.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerically verified statement (exact theorem, inequality sweep) failed.
class PropertyViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Too few usable samples for a fit.
class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(what);
}

}  // namespace pseudospec
