#pragma once

#include <stdexcept>
#include <string>

namespace possplit {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments: unsupported flag combinations, even grid sizes, T/h not an
// integer, parameters outside their stated ranges.
struct UsageError : Error {
  using Error::Error;
};

// An order-condition sum evaluated to something other than its exact value.
struct ConditionViolation : Error {
  using Error::Error;
};

// A binomial identity implied by the order conditions failed.
struct IdentityViolation : Error {
  using Error::Error;
};

// A chain produced a non-finite component.
struct NumericFailure : Error {
  using Error::Error;
};

// A Lipschitz probe was fed coincident (or no) sample pairs.
struct DegenerateInput : Error {
  using Error::Error;
};

// A convolution of real data came back with a non-negligible imaginary part.
struct SymmetryViolation : Error {
  using Error::Error;
};

// The tan-relaxation vector field was evaluated at or beyond its poles.
struct TanDomain : Error {
  using Error::Error;
};

// Too few points survived filtering to fit a slope.
struct InsufficientData : Error {
  using Error::Error;
};

}  // namespace possplit
