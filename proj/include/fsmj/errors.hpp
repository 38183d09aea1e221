#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsmj {

/// Base class of every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or arguments (too few classes, bad flag values, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An index outside the valid feature or class range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A model whose probabilities would make log-scores undefined.
class DegenerateModelError : public Error {
 public:
  using Error::Error;
};

/// Inputs outside the domain of a divergence or metric (mismatched lengths,
/// unnormalized vectors, absolute-continuity violations, zero denominators).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace fsmj
