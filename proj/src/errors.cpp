#include "sensorplace/errors.hpp"

namespace sensorplace {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::Decomposition: return "decomposition";
    case ErrorCode::RigidBodyMode: return "rigid-body-mode";
    case ErrorCode::UndefinedMode: return "undefined-mode";
    case ErrorCode::ConstructionFailed: return "construction-failed";
    case ErrorCode::SingularSystem: return "singular-system";
    case ErrorCode::DegenerateColumn: return "degenerate-column";
    case ErrorCode::BudgetOutOfRange: return "budget-out-of-range";
    case ErrorCode::CombinatorialGuard: return "combinatorial-guard";
    case ErrorCode::InsufficientExtrema: return "insufficient-extrema";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(ErrorCode::Parse, source + ":" + std::to_string(line) + ":" +
                                  std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace sensorplace
