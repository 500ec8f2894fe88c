// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lmlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression source; `position` is the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(const std::string& token, std::size_t position)
      : ParseError("unknown identifier '" + token + "'", position), token_(token) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

/// Evaluation hit a singular sub-expression (ln or sqrt of a bad argument,
/// division by zero).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ChartMismatchError : public Error {
 public:
  ChartMismatchError() : Error("operands live on different charts") {}
  using Error::Error;
};

/// Too many sample points were skipped by the singularity guard.
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold on the domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Trajectory left the enlarged domain box or hit a guarded singularity.
class FlowError : public Error {
 public:
  using Error::Error;
};

/// Problem document is structurally invalid.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A check refers to a name that is not defined in the document.
class ReferenceError : public ValidationError {
 public:
  explicit ReferenceError(const std::string& symbol)
      : ValidationError("undefined symbol '" + symbol + "'"), symbol_(symbol) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

}  // namespace lmlab
