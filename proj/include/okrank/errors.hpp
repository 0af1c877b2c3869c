#pragma once

#include <stdexcept>
#include <string>

namespace okrank {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A series was requested with a truncation order below its lowest term.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// Leading coefficient is not a unit, or the known window is identically zero.
class InversionError : public Error {
public:
    using Error::Error;
};

/// Coefficient lookup outside the known window.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Mathematically undefined request (vanishing product, pole, empty object).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed combinatorial object or text encoding.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Unsupported combination of arguments (unknown identity, bad stat/method pair).
class UsageError : public Error {
public:
    using Error::Error;
};

/// Two operands live in different coefficient rings.
class RingError : public Error {
public:
    using Error::Error;
};

/// A reduction or cross-check did not hold.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

} // namespace okrank
