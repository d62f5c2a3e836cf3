#pragma once

#include <stdexcept>
#include <string>

namespace fricke {

// malformed user input: bad slope text, zero denominator pairs, bad flags
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// an operation was asked of data that does not meet its contract
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidTriangleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// fuel, depth or term caps were hit before an answer was reached
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// int64 slope arithmetic would wrap
struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

struct OracleUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a series summand has a pole (trace at +-2 for the general variant, -2 for the cusp one)
struct SingularTermError : std::domain_error {
  using std::domain_error::domain_error;
};

struct RankDeficientError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fricke
