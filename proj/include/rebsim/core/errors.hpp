#pragma once

#include <stdexcept>
#include <string>

namespace rebsim {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad mode algebra: duplicate names, missing modes, dimension mismatch.
class CompositionError : public Error {
public:
    using Error::Error;
};

// State invariant violated (non-Hermitian, negative eigenvalue, trace out of range).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Numerical guard tripped: truncation leakage, zero-probability herald,
// formula consistency violation.
class NumericalGuardError : public Error {
public:
    using Error::Error;
};

// Invalid configuration (schema or value range); message carries the field path.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace rebsim
