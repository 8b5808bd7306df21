#pragma once

#include <stdexcept>
#include <string>

namespace pdual {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Remainder of an exact polynomial division was nonzero.
class InexactDivision : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// A symbolic feasibility bound (degree cap) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class NotSmooth : public Error {
 public:
  using Error::Error;
};

// Root finding, quadrature or another numeric stage failed to converge
// or produced a non-finite value.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

// Malformed user input (files, specs, flags).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdual
