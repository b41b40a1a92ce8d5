#pragma once

#include <stdexcept>
#include <string>

namespace pgd {

enum class ErrorCode {
  InvalidArgument,
  OutOfHorizon,
  InvalidAnchor,
  NegativeStrength,
  UnresolvedConfiguration,
  EventCap,
  QuadratureFailure,
  NonpositiveP,
  SingularSystem,
  SupportClipped,
  EmptyComparison,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfHorizon: return "OutOfHorizon";
    case ErrorCode::InvalidAnchor: return "InvalidAnchor";
    case ErrorCode::NegativeStrength: return "NegativeStrength";
    case ErrorCode::UnresolvedConfiguration: return "UnresolvedConfiguration";
    case ErrorCode::EventCap: return "EventCap";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NonpositiveP: return "NonpositiveP";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::SupportClipped: return "SupportClipped";
    case ErrorCode::EmptyComparison: return "EmptyComparison";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pgd
