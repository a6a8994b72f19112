#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace relhom {

enum class ErrorCode {
  ShapeMismatch,
  AmbientMismatch,
  AlgebraMismatch,
  InvalidInput,
  NonSplit,
  NotInjective,
  SearchExhausted,
  CrosscheckFailed,
  Overlap,
  NoExtension,
  NoLiftPrecondition,
  NoLift,
  ParseError,
  ValidationError,
  Usage,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::AmbientMismatch: return "AMBIENT_MISMATCH";
    case ErrorCode::AlgebraMismatch: return "ALGEBRA_MISMATCH";
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::NonSplit: return "NON_SPLIT";
    case ErrorCode::NotInjective: return "NOT_INJECTIVE";
    case ErrorCode::SearchExhausted: return "SEARCH_EXHAUSTED";
    case ErrorCode::CrosscheckFailed: return "CROSSCHECK_FAILED";
    case ErrorCode::Overlap: return "OVERLAP";
    case ErrorCode::NoExtension: return "NO_EXTENSION";
    case ErrorCode::NoLiftPrecondition: return "NO_LIFT(precondition)";
    case ErrorCode::NoLift: return "NO_LIFT";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::ValidationError: return "VALIDATION_ERROR";
    case ErrorCode::Usage: return "USAGE";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace relhom
