//===-- lexer.h - KernelC tokenizer -----------------------------*- C++ -*-===//

#pragma once

#include "specminer/error.h"

#include <string>
#include <vector>

namespace specminer::frontend {

struct SourceProgram {
  std::string text;
  std::string origin = "<stdin>";
};

enum class Tok {
  Ident,
  IntLit,
  KwStruct,
  KwInt,
  KwVoid,
  KwIf,
  KwElse,
  KwWhile,
  KwReturn,
  KwNull,
  KwMalloc,
  KwSizeof,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Semi,
  Comma,
  Star,
  Arrow,
  Assign,
  EqEq,
  Neq,
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  AndAnd,
  OrOr,
  Bang,
};

const char *describe(Tok kind);

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;

  bool operator==(const Token &) const = default;
};

/// Splits source text into tokens. Comments and preprocessor lines (`#...`)
/// are skipped. Throws IllegalCharacter.
std::vector<Token> tokenize(const SourceProgram &src);

} // namespace specminer::frontend
