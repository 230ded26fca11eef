#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sf {

enum class ErrorCode {
  NonLinearTarget,
  TargetAbsent,
  SingularSystem,
  HaloExceeded,
  NotTimeVarying,
  OutOfDomain,
  UnboundSpacing,
  StackOverflowBound,
  MissingBinding,
  ShapeMismatch,
  CflViolation,
  NonConvergence,
  UnknownDemo,
  InvalidArgument,
  Io,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonLinearTarget: return "NonLinearTarget";
    case ErrorCode::TargetAbsent: return "TargetAbsent";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::HaloExceeded: return "HaloExceeded";
    case ErrorCode::NotTimeVarying: return "NotTimeVarying";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::UnboundSpacing: return "UnboundSpacing";
    case ErrorCode::StackOverflowBound: return "StackOverflowBound";
    case ErrorCode::MissingBinding: return "MissingBinding";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::UnknownDemo: return "UnknownDemo";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

// All library failures are reported through this type; `code()` identifies
// the failure class so callers can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sf
