#pragma once

#include <stdexcept>
#include <string>

namespace fnr {

enum class ErrorKind {
  invalid_argument,
  parse,
  depth_exhausted,
  not_a_total_derivative,
  residual_nonzero,
  elimination_failure,
};

/// Base of every engine error; `kind()` is what the C API maps to a status code.
class EngineError : public std::runtime_error {
 public:
  EngineError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public EngineError {
 public:
  explicit InvalidArgument(const std::string& what) : EngineError(ErrorKind::invalid_argument, what) {}
};

class ParseError : public EngineError {
 public:
  explicit ParseError(const std::string& what) : EngineError(ErrorKind::parse, what) {}
};

/// A coefficient below the guaranteed truncation of a series was requested.
class DepthExhausted : public EngineError {
 public:
  explicit DepthExhausted(const std::string& what) : EngineError(ErrorKind::depth_exhausted, what) {}
};

class NotATotalDerivative : public EngineError {
 public:
  explicit NotATotalDerivative(const std::string& what)
      : EngineError(ErrorKind::not_a_total_derivative, what) {}
};

/// A zero-curvature coefficient neither defines an evolution nor vanishes.
class ResidualNonZero : public EngineError {
 public:
  explicit ResidualNonZero(const std::string& what) : EngineError(ErrorKind::residual_nonzero, what) {}
};

class EliminationFailure : public EngineError {
 public:
  explicit EliminationFailure(const std::string& what)
      : EngineError(ErrorKind::elimination_failure, what) {}
};

}  // namespace fnr
