#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slabdiff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A physical or dimensionless parameter is outside its admissible range.
class InvalidParameter : public Error {
public:
  using Error::Error;
};

/// A coordinate lies outside the slab [-1/2, 1/2] or a time is negative.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Malformed sampled input (too few samples, mismatched grids, ...).
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// Quadrature or another numerical procedure failed to converge.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// The WKB coefficient formula is singular for this mode.
class ResonantMode : public Error {
public:
  ResonantMode(const std::string &what, int mode) : Error(what), mode_(mode) {}
  int mode() const noexcept { return mode_; }

private:
  int mode_;
};

/// The free-space short-time reference is not valid for the request.
class ReferenceInvalid : public Error {
public:
  using Error::Error;
};

/// Finite-difference configuration violates a stability bound.
class ConfigurationError : public Error {
public:
  using Error::Error;
};

/// Scenario document could not be parsed; carries the 1-based line number.
class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Scenario parsed but violates an invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

} // namespace slabdiff
