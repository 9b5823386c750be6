#ifndef BESOVMAP_ERRORS_HPP
#define BESOVMAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace besovmap {

/// Error categories surfaced by the library. Each maps to one failure mode
/// named in the operation contracts, so callers (and tests) can dispatch on
/// the code instead of parsing messages.
enum class ErrorCode {
  InvalidResolution,
  InvalidExponent,
  BudgetExceeded,
  MissingPoint,
  EmptySubset,
  DegenerateGeometry,
  WitnessNotFound,
  DimensionMismatch,
  PointSetMismatch,
  InsufficientPairs,
  DegenerateMap,
  NonInjective,
  WindowTooSmall,
  UnsupportedMode,
  DuplicatePoint,
  EmptyScale,
  EmptyFamily,
  EvaluationError,
  ParameterError,
  IoError,
  ConfigError,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidResolution: return "invalid-resolution";
    case ErrorCode::InvalidExponent: return "invalid-exponent";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::MissingPoint: return "missing-point";
    case ErrorCode::EmptySubset: return "empty-set";
    case ErrorCode::DegenerateGeometry: return "degenerate-geometry";
    case ErrorCode::WitnessNotFound: return "witness-not-found";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::PointSetMismatch: return "point-set-mismatch";
    case ErrorCode::InsufficientPairs: return "insufficient-pairs";
    case ErrorCode::DegenerateMap: return "degenerate-map";
    case ErrorCode::NonInjective: return "non-injective";
    case ErrorCode::WindowTooSmall: return "window-too-small";
    case ErrorCode::UnsupportedMode: return "unsupported-mode";
    case ErrorCode::DuplicatePoint: return "duplicate-point";
    case ErrorCode::EmptyScale: return "empty-scale";
    case ErrorCode::EmptyFamily: return "empty-family";
    case ErrorCode::EvaluationError: return "evaluation-error";
    case ErrorCode::ParameterError: return "parameter-error";
    case ErrorCode::IoError: return "io-error";
    case ErrorCode::ConfigError: return "config-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace besovmap

#endif  // BESOVMAP_ERRORS_HPP
