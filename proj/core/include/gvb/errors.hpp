#pragma once

#include <stdexcept>
#include <string>

namespace gvb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class UnknownSymbolError : public Error {
 public:
  using Error::Error;
};

class BidegreeError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

/// Raised when a homotopy precondition (closedness, variational triviality) fails.
class NotExactError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace gvb
