#pragma once

#include <stdexcept>
#include <string>

namespace sensorplace {

enum class ErrorCode {
  InvalidParameter,
  DimensionMismatch,
  Decomposition,
  RigidBodyMode,
  UndefinedMode,
  ConstructionFailed,
  SingularSystem,
  DegenerateColumn,
  BudgetOutOfRange,
  CombinatorialGuard,
  InsufficientExtrema,
  Parse,
  Io,
};

const char* to_string(ErrorCode code);

/// Base error for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source position (column 0 when unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column,
             const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace sensorplace
