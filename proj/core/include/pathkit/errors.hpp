#pragma once

#include <stdexcept>
#include <string>

namespace pathkit {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of the operation
// (nonpositive scale, nonexistent moment, divergent integral, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The numerical method could not certify the requested accuracy.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

// A malformed H-/G-function specification (orders, slopes, or no contour
// separating the two pole families).
class SpecError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Moment matching found no root in any admissible branch.
class FitError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace pathkit
