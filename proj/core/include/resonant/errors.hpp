#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace resonant {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad problem file, inconsistent dimensions, bad flags.
struct ParseError : Error {
    using Error::Error;
};

/// An operation was called outside its contract (mismatched truncation
/// orders, non-diagonal linear part, a generator the adjoint exponential
/// cannot sum, ...).
struct PreconditionError : Error {
    using Error::Error;
};

/// The positivity conditions required by the versal solver do not hold.
struct PositivityError : Error {
    using Error::Error;
};

/// A stored result failed re-verification.
struct VerificationError : Error {
    using Error::Error;
};

/// Numeric blow-up: a small divisor fell below the guard threshold or a
/// coefficient exceeded the overflow guard.
struct BlowupError : Error {
    BlowupError(const std::string& what, std::vector<unsigned> exponent,
                unsigned direction, double divisor_abs)
        : Error(what),
          exponent(std::move(exponent)),
          direction(direction),
          divisor_abs(divisor_abs) {}
    explicit BlowupError(const std::string& what) : Error(what) {}

    std::vector<unsigned> exponent;  // offending x-exponent K, if known
    unsigned direction = 0;          // offending component i
    double divisor_abs = 0.0;        // |lambda_{K,i}| at the failure
};

}  // namespace resonant
