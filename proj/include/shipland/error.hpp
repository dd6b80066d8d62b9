#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shipland {

enum class ErrorCode {
  NonPositiveDepth,
  EmptyMask,
  SingularWindow,
  InsufficientRects,
  ScreenReject,
  TooFewPoints,
  DegenerateConfiguration,
  NotConverged,
  NonPositiveDt,
  InconsistentMode,
  ConfigInvalid,
  IoFailure,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is the
/// stable identifier callers should branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class ScreenFailure { Length, Slope, Ordering };

std::string_view to_string(ScreenFailure failure);

class ScreenRejectError : public Error {
 public:
  ScreenRejectError(ScreenFailure which, const std::string& what)
      : Error(ErrorCode::ScreenReject, std::string(to_string(which)) + ": " + what), which_(which) {}

  ScreenFailure which() const noexcept { return which_; }

 private:
  ScreenFailure which_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDepth: return "NonPositiveDepth";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::SingularWindow: return "SingularWindow";
    case ErrorCode::InsufficientRects: return "InsufficientRects";
    case ErrorCode::ScreenReject: return "ScreenReject";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::NonPositiveDt: return "NonPositiveDt";
    case ErrorCode::InconsistentMode: return "InconsistentMode";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

inline std::string_view to_string(ScreenFailure failure) {
  switch (failure) {
    case ScreenFailure::Length: return "length";
    case ScreenFailure::Slope: return "slope";
    case ScreenFailure::Ordering: return "ordering";
  }
  return "unknown";
}

}  // namespace shipland
