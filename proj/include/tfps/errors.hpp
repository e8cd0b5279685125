#pragma once

#include <stdexcept>
#include <string>

namespace tfps {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user input: config fields, parameter ranges, mismatched provenance.
struct ValidationError : Error {
  using Error::Error;
};

// An operation was called outside its stated contract.
struct PreconditionError : Error {
  using Error::Error;
};

// An iterative solve ran out of iterations.
struct ConvergenceError : Error {
  using Error::Error;
};

// Root scan could not separate roots at the configured resolution.
struct ResolutionError : Error {
  using Error::Error;
};

// Threshold (alpha=1, beta=1) and continuum degeneracies.
struct DegenerateError : Error {
  using Error::Error;
};

// Configuration exists algebraically but has no physical meaning.
struct NonphysicalError : Error {
  using Error::Error;
};

}  // namespace tfps
