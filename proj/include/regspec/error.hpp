#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regspec {

enum class ErrorCode {
  MalformedSpec,
  CyclicDefinition,
  UnknownSpec,
  UnknownPredicate,
  DuplicatePredicate,
  NoGenerator,
  RetryExhausted,
  DepthExceeded,
  DuplicateGenerator,
  ParseError,
  SyntaxError,
  DuplicateName,
  DanglingSource,
  MultipleRoots,
  UnknownRoot,
  CyclicReference,
  MalformedDocument,
};

std::string_view to_string(ErrorCode code);

// Base exception for every failure the library reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace regspec
