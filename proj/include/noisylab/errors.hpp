#pragma once

#include <stdexcept>
#include <string>

namespace noisylab {

// Base of every error raised by the library. The CLI maps each subclass to a
// distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Malformed input data (CSV cells, missing columns, vote totals out of range).
class DataError : public Error {
 public:
  using Error::Error;
};

// The logistic likelihood has no finite maximiser.
class SeparationError : public Error {
 public:
  using Error::Error;
};

// A matrix that must be positive definite could not be factorised.
class RankError : public Error {
 public:
  using Error::Error;
};

// An iterative procedure ran out of iterations or failed too often.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// The data carry no information about the requested parameter.
class IdentifiabilityError : public Error {
 public:
  using Error::Error;
};

// The objective is numerically flat.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

namespace detail {
[[noreturn]] inline void contract_fail(const std::string& what) {
  throw ContractViolation(what);
}
}  // namespace detail

#define NOISYLAB_EXPECTS(cond, msg)                 \
  do {                                              \
    if (!(cond)) ::noisylab::detail::contract_fail(msg); \
  } while (0)

}  // namespace noisylab
