#pragma once

#include <stdexcept>

namespace trek {

/// Operands disagree in arity or variable labels.
struct ArityMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A coefficient-wise integer division left a remainder. Inside the
/// u-recurrence this is not a routine error: it would falsify the
/// integrality of the sequence, so callers must abort loudly.
struct NotDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An exact ring division inside a fraction-free elimination failed.
/// Indicates an internal inconsistency; never expected on valid input.
struct ExactDivisionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A scaled certificate entry (s*q)^n * u_hat_n failed to be an integer.
struct NonInteger : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A coefficient-ring exponent bound was violated during the monomial map.
struct ExponentViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidConstants : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace trek
