#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wsc {

enum class ErrorCode {
  kParseError,
  kIoError,
  kDuplicateEdge,
  kSelfLoop,
  kBadWeight,
  kShapeError,
  kNotSymmetric,
  kNonzeroDiagonal,
  kUnknownPattern,
  kEmptyPlan,
  kUnsupportedSize,
  kTooLarge,
  kConfigError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kBadWeight: return "BadWeight";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::kUnknownPattern: return "UnknownPattern";
    case ErrorCode::kEmptyPlan: return "EmptyPlan";
    case ErrorCode::kUnsupportedSize: return "UnsupportedSize";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map them to stable exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wsc
