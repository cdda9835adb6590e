#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cdc {

enum class ErrorKind {
  InvalidInput,
  InvalidParams,
  DivisionByZero,
  SingularMatrix,
  ShapeMismatch,
  InsufficientAnswers,
  DecodingFailure,
  Io,
};

const char* to_string(ErrorKind kind);

/// Library error. `kind` is stable and machine readable; the message is not.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the dense solver; `pivot` is the column with no usable pivot.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(std::size_t pivot, const std::string& what)
      : Error(ErrorKind::SingularMatrix, what), pivot_(pivot) {}

  std::size_t pivot() const { return pivot_; }

 private:
  std::size_t pivot_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

}  // namespace cdc
