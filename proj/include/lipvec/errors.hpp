#pragma once

#include <stdexcept>
#include <string>

namespace lipvec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Raised when a Minkowski-sum query would enumerate more piece combinations
/// than the configured cap allows.
class CombinationCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Raised when a subspace gauge is evaluated outside the span of its disk.
class OutsideSubspace : public Error {
 public:
  using Error::Error;
};

/// Raised when a finite value was required but the functional is +inf.
class InfiniteValue : public Error {
 public:
  using Error::Error;
};

}  // namespace lipvec
