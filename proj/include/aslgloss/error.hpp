#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aslgloss {

enum class ErrorCode {
  MissingFile,
  UnwritableOutput,
  MalformedLine,
  MalformedHeader,
  InvalidEntry,
  EmptyLexicon,
  ZeroVector,
  LengthMismatch,
  BadJointCount,
  NonFiniteCoordinate,
  TooFewFrames,
  LayoutMismatch,
  MalformedClip,
  DegenerateSkeleton,
  DuplicateKnotTime,
  EmptyClipList,
  NoResolvableSigns,
  EmptyCorpus,
  ShapeMismatch,
  InvalidArgument,
  InvalidConfig,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::UnwritableOutput: return "UnwritableOutput";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::InvalidEntry: return "InvalidEntry";
    case ErrorCode::EmptyLexicon: return "EmptyLexicon";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BadJointCount: return "BadJointCount";
    case ErrorCode::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorCode::TooFewFrames: return "TooFewFrames";
    case ErrorCode::LayoutMismatch: return "LayoutMismatch";
    case ErrorCode::MalformedClip: return "MalformedClip";
    case ErrorCode::DegenerateSkeleton: return "DegenerateSkeleton";
    case ErrorCode::DuplicateKnotTime: return "DuplicateKnotTime";
    case ErrorCode::EmptyClipList: return "EmptyClipList";
    case ErrorCode::NoResolvableSigns: return "NoResolvableSigns";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library. `code()` identifies
/// the failure kind; `detail()` carries the numeric payload some kinds report
/// (line number, joint count, frame index).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, long long detail = -1)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  long long detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  long long detail_;
};

}  // namespace aslgloss
