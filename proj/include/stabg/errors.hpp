#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stabg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad parameters, dimension mismatches, parse failures.
class InputError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class NonAssociative : public InputError {
 public:
  NonAssociative(std::size_t i, std::size_t j, std::size_t k)
      : InputError("multiplication is not associative on basis triple (" + std::to_string(i) + "," +
                   std::to_string(j) + "," + std::to_string(k) + ")"),
        i(i), j(j), k(k) {}
  std::size_t i, j, k;
};

class BadUnit : public InputError {
 public:
  explicit BadUnit(std::size_t i)
      : InputError("unit is not a two-sided identity on basis element " + std::to_string(i)), i(i) {}
  std::size_t i;
};

class NotCommutative : public InputError {
 public:
  using InputError::InputError;
};

class NotSurjective : public InputError {
 public:
  using InputError::InputError;
};

class AlgebraMismatch : public InputError {
 public:
  using InputError::InputError;
};

class NotQuasiFrobenius : public Error {
 public:
  using Error::Error;
};

/// Raised when a computation needs a split semisimple quotient and does not get one.
class UnsupportedSemisimpleType : public Error {
 public:
  using Error::Error;
};

/// An enumeration or search would exceed its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

/// A cokernel of a discovered cofibration has a summand outside the universe.
class ClosureEscape : public Error {
 public:
  using Error::Error;
};

}  // namespace stabg
