#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zflim {

enum class ErrorCode {
  InvalidArgument,
  PoleOnUnitCircle,
  RootFindingFailed,
  InvalidGain,
  NotStable,
  NoTightCandidate,
  PrecisionExhausted,
  DegenerateDenominator,
  LpNumericalFailure,
  BracketInvalid,
  InvalidInterval,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PoleOnUnitCircle: return "PoleOnUnitCircle";
    case ErrorCode::RootFindingFailed: return "RootFindingFailed";
    case ErrorCode::InvalidGain: return "InvalidGain";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::NoTightCandidate: return "NoTightCandidate";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::LpNumericalFailure: return "LpNumericalFailure";
    case ErrorCode::BracketInvalid: return "BracketInvalid";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// All library failures are reported through this exception; `code()` tells
/// callers (the CLI in particular) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zflim
