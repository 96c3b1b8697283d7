#pragma once

#include <stdexcept>
#include <string>

namespace regionalize {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside its legal range (k > n, sigma <= 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed or violates a structural requirement.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical stage could not produce a meaningful result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace regionalize
