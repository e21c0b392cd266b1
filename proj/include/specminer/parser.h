//===-- parser.h - KernelC parser -------------------------------*- C++ -*-===//

#pragma once

#include "specminer/ast.h"
#include "specminer/lexer.h"

namespace specminer::frontend {

/// Recursive-descent parser over the KernelC subset. Precedence, loosest
/// first: `=`, `||`, `&&`, `== !=`, `< <= > >=`, `+ -`, `!`, `->`/call.
/// Throws SyntaxError naming the expected tokens.
ParsedProgram parse(const std::vector<Token> &tokens);

/// Renders a program back to KernelC source.
std::string print(const ParsedProgram &program);
std::string print(const Expr &expr);

/// Structural equality ignoring source positions and resolved types.
bool sameShape(const ParsedProgram &a, const ParsedProgram &b);

} // namespace specminer::frontend
