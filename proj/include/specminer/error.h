//===-- error.h - Error reporting -------------------------------*- C++ -*-===//

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace specminer {

struct SourcePos {
  int line = 0;
  int column = 0;

  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
  bool operator==(const SourcePos &) const = default;
};

enum class ErrorCode {
  // frontend
  EmptySource,
  IllegalCharacter,
  SyntaxError,
  UnknownIdentifier,
  UnknownField,
  TypeMismatch,
  DuplicateDefinition,
  // symstate
  UnboundAddress,
  ArityMismatch,
  NotFinal,
  // constraints
  UnsatInput,
  // inference
  UnknownFunction,
  NotAModifier,
  // engine
  StuckConfiguration,
};

const char *errorCodeName(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message,
        std::optional<SourcePos> pos = std::nullopt)
      : std::runtime_error(format(code, message, pos)), code_(code),
        pos_(pos) {}

  ErrorCode code() const { return code_; }
  const std::optional<SourcePos> &pos() const { return pos_; }

  bool isFrontendError() const {
    return code_ >= ErrorCode::EmptySource &&
           code_ <= ErrorCode::DuplicateDefinition;
  }

private:
  static std::string format(ErrorCode code, const std::string &message,
                            const std::optional<SourcePos> &pos) {
    std::string out = errorCodeName(code);
    if (pos)
      out += " at " + pos->str();
    return out + ": " + message;
  }

  ErrorCode code_;
  std::optional<SourcePos> pos_;
};

} // namespace specminer
