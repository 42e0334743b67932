#include "regspec/error.hpp"

namespace regspec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedSpec: return "MalformedSpec";
    case ErrorCode::CyclicDefinition: return "CyclicDefinition";
    case ErrorCode::UnknownSpec: return "UnknownSpec";
    case ErrorCode::UnknownPredicate: return "UnknownPredicate";
    case ErrorCode::DuplicatePredicate: return "DuplicatePredicate";
    case ErrorCode::NoGenerator: return "NoGenerator";
    case ErrorCode::RetryExhausted: return "RetryExhausted";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::DuplicateGenerator: return "DuplicateGenerator";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::DanglingSource: return "DanglingSource";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::UnknownRoot: return "UnknownRoot";
    case ErrorCode::CyclicReference: return "CyclicReference";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
  }
  return "Unknown";
}

}  // namespace regspec
