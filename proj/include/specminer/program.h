//===-- program.h - Resolved program index ----------------------*- C++ -*-===//

#pragma once

#include "specminer/ast.h"
#include "specminer/lexer.h"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace specminer::frontend {

struct ProgramIndex {
  std::map<std::string, StructDef> structs;
  std::map<std::string, FunctionDef> functions;
  /// Functions with a non-void return type.
  std::set<std::string> observers;
  /// Every function; no purity is assumed.
  std::set<std::string> modifiers;
  std::vector<std::string> warnings;

  const FunctionDef &function(const std::string &name) const;
  const StructDef &structDef(const std::string &name) const;
};

/// Name resolution, type checking and observer/modifier classification.
/// Mutates the expression type annotations in `program`.
ProgramIndex resolve(ParsedProgram program);

/// tokenize + parse + resolve. Throws EmptySource on blank input.
ProgramIndex load(const SourceProgram &src);

} // namespace specminer::frontend
