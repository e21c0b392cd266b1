//===-- error.cpp ---------------------------------------------------------===//

#include "specminer/error.h"

namespace specminer {

const char *errorCodeName(ErrorCode code) {
  switch (code) {
  case ErrorCode::EmptySource:
    return "EmptySource";
  case ErrorCode::IllegalCharacter:
    return "IllegalCharacter";
  case ErrorCode::SyntaxError:
    return "SyntaxError";
  case ErrorCode::UnknownIdentifier:
    return "UnknownIdentifier";
  case ErrorCode::UnknownField:
    return "UnknownField";
  case ErrorCode::TypeMismatch:
    return "TypeMismatch";
  case ErrorCode::DuplicateDefinition:
    return "DuplicateDefinition";
  case ErrorCode::UnboundAddress:
    return "UnboundAddress";
  case ErrorCode::ArityMismatch:
    return "ArityMismatch";
  case ErrorCode::NotFinal:
    return "NotFinal";
  case ErrorCode::UnsatInput:
    return "UnsatInput";
  case ErrorCode::UnknownFunction:
    return "UnknownFunction";
  case ErrorCode::NotAModifier:
    return "NotAModifier";
  case ErrorCode::StuckConfiguration:
    return "StuckConfiguration";
  }
  return "Error";
}

} // namespace specminer
