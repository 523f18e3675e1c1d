#pragma once

#include <stdexcept>
#include <string>

namespace volfit {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid data: dimension mismatches, non-finite or negative values,
// malformed files. Mapped to exit code 2 by the CLI.
struct ValidationError : Error {
  using Error::Error;
};

// Numerical failure: non-positive-definite system in direct mode,
// undefined correlation, non-finite results. Mapped to exit code 3.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace volfit
