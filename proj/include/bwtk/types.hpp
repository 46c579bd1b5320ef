#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bwtk {

/// Integer symbol. 0 is the terminator, real symbols live in [1..sigma].
using Symbol = std::uint16_t;

/// BWT row / text position. Public APIs use 1-based rows as in the
/// usual FM-index notation; 0 is reserved as the "absent" marker.
using Pos = std::size_t;

inline constexpr Symbol kTerminator = 0;
inline constexpr std::size_t kMaxSigma = 256;

/// Bad parameters or malformed arguments (maps to CLI exit code 1).
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Unreadable or malformed input data (maps to CLI exit code 1).
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A measure could not be evaluated, e.g. a zero denominator
/// (maps to CLI exit code 2).
class ComputationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ZeroDenominator : public ComputationError {
  public:
    explicit ZeroDenominator(const std::string& what)
        : ComputationError("zero denominator: " + what) {}
};

}  // namespace bwtk
