#pragma once

#include <stdexcept>
#include <string>

namespace uwell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied parameters was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An iteration produced non-finite samples or left the admissible cone.
class NumericalInstability : public Error {
 public:
  using Error::Error;
};

}  // namespace uwell
