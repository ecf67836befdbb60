#pragma once

#include <stdexcept>
#include <string>

namespace aapdhg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed MPS, inconsistent bounds, invalid flag combinations.
struct InputError : Error {
  using Error::Error;
};

// Feature deliberately out of scope (MPS RANGES, asymmetric-step diagnostics).
struct UnsupportedError : Error {
  using Error::Error;
};

// Degenerate linear algebra: zero pivot, rank-deficient system with no
// regularization. Solvers catch this and fall back to a plain step.
struct SingularError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

}  // namespace aapdhg
