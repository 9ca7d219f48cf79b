#pragma once

#include <stdexcept>
#include <string>

namespace boxart {

enum class ErrorCode {
  WidthTooSmall,
  DoesNotFit,
  OddDimensions,
  NoSpacesAvailable,
  BudgetUnsatisfiable,
  NoFreeCorner,
  MaskMismatch,
  UnknownPart,
  VocabularyTooSmall,
  InvalidArgs,
  EmptyGroup,
  Auth,
  Transport,
  RateLimited,
  MalformedResponse,
  Io,
};

const char* to_string(ErrorCode code);

/// Single exception type for the whole library; the code discriminates.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::WidthTooSmall: return "WidthTooSmall";
    case ErrorCode::DoesNotFit: return "DoesNotFit";
    case ErrorCode::OddDimensions: return "OddDimensions";
    case ErrorCode::NoSpacesAvailable: return "NoSpacesAvailable";
    case ErrorCode::BudgetUnsatisfiable: return "BudgetUnsatisfiable";
    case ErrorCode::NoFreeCorner: return "NoFreeCorner";
    case ErrorCode::MaskMismatch: return "MaskMismatch";
    case ErrorCode::UnknownPart: return "UnknownPart";
    case ErrorCode::VocabularyTooSmall: return "VocabularyTooSmall";
    case ErrorCode::InvalidArgs: return "InvalidArgs";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::Auth: return "Auth";
    case ErrorCode::Transport: return "Transport";
    case ErrorCode::RateLimited: return "RateLimited";
    case ErrorCode::MalformedResponse: return "MalformedResponse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace boxart
