//===-- ast.h - KernelC abstract syntax -------------------------*- C++ -*-===//

#pragma once

#include "specminer/ctype.h"
#include "specminer/error.h"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace specminer::frontend {

enum class BinaryOp { Eq, Neq, Lt, Le, Gt, Ge, Add, Sub };
enum class LogicalOp { And, Or };

const char *spelling(BinaryOp op);
inline bool isComparison(BinaryOp op) {
  return op != BinaryOp::Add && op != BinaryOp::Sub;
}

struct Expr;
struct Stmt;
using ExprPtr = std::shared_ptr<Expr>;
using StmtPtr = std::shared_ptr<Stmt>;

struct IntLit {
  std::int64_t value;
};
struct NullLit {};
struct VarRef {
  std::string name;
};
struct FieldAccess {
  ExprPtr base;
  std::string field;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs, rhs;
};
struct Logical {
  LogicalOp op;
  ExprPtr lhs, rhs;
};
struct Not {
  ExprPtr operand;
};
struct Call {
  std::string callee;
  std::vector<ExprPtr> args;
};
/// `malloc(sizeof(struct S))`, optionally behind a `(struct S*)` cast that
/// carries no semantics.
struct Malloc {
  std::string structName;
  std::optional<CType> cast;
};
struct Assign {
  ExprPtr target; ///< VarRef or FieldAccess
  ExprPtr value;
};

struct Expr {
  std::variant<IntLit, NullLit, VarRef, FieldAccess, Binary, Logical, Not, Call,
               Malloc, Assign>
      node;
  SourcePos pos;
  CType type = CType::intType(); ///< static type, set by resolve()

  template <class T> const T *as() const { return std::get_if<T>(&node); }
  template <class T> bool is() const { return std::holds_alternative<T>(node); }
};

struct ExprStmt {
  ExprPtr expr;
};
struct If {
  ExprPtr cond;
  StmtPtr then;
  StmtPtr otherwise; ///< may be null
};
struct While {
  ExprPtr cond;
  StmtPtr body;
};
struct Return {
  ExprPtr value; ///< null for `return;`
};
struct Block {
  std::vector<StmtPtr> stmts;
};
struct Empty {};

struct Stmt {
  std::variant<ExprStmt, If, While, Return, Block, Empty> node;
  SourcePos pos;

  template <class T> const T *as() const { return std::get_if<T>(&node); }
};

struct Declarator {
  std::string name;
  CType type;
  SourcePos pos;
};

struct StructDef {
  std::string name;
  std::vector<Declarator> fields;
  SourcePos pos;

  const Declarator *field(const std::string &fieldName) const {
    for (const Declarator &f : fields)
      if (f.name == fieldName)
        return &f;
    return nullptr;
  }
};

struct FunctionDef {
  std::string name;
  CType returnType;
  std::vector<Declarator> params;
  std::vector<Declarator> locals; ///< declarations at the head of the body
  StmtPtr body;                   ///< a Block
  SourcePos pos;
};

struct ParsedProgram {
  std::vector<StructDef> structs;
  std::vector<FunctionDef> functions;
};

} // namespace specminer::frontend
