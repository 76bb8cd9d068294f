#pragma once

#include <stdexcept>
#include <string>

namespace posred {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural or numerical precondition on the inputs does not hold
/// (unstable system, reducible reduced graph, out-of-range epsilon, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numerical kernel failed: non-convergence, singular shifted system,
/// residual tolerance not met.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Malformed file or unsupported file variant.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An operation was asked to exceed a configured problem-size cap.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace posred
