#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curlinv {

enum class ErrorCode {
  kDuplicateTet,
  kDanglingVertexId,
  kDegenerateTet,
  kUnknownIndex,
  kDimensionMismatch,
  kNotIncident,
  kNotLive,
  kMissingValue,
  kZeroBlockViolation,
  kNotSolenoidal,
  kNotCurlFree,
  kDisconnectedGraph,
  kNonManifoldFace,
  kNotASpanningTree,
  kInconsistentInput,
  kInvalidPath,
  kTopologyBroken,
  kParseError,
  kValidationError,
  kInternal,
};

std::string_view error_code_name(ErrorCode code);

// All library failures surface as this exception; `code()` is stable and
// meant for programmatic dispatch (the CLI maps it to exit codes).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry the 1-based line number of the offending input line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace curlinv
