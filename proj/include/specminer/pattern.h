//===-- pattern.h - Symbolic configurations ---------------------*- C++ -*-===//
//
// A Pattern mirrors the cells <k>, <env>, <heap>, <path-condition> and
// <mem-path-condition>. The continuation is a stack of work items whose back
// is the next item to run; intermediate results live on a separate value
// stack.
//
//===----------------------------------------------------------------------===//

#pragma once

#include "specminer/heap.h"
#include "specminer/program.h"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace specminer::symstate {

using frontend::ExprPtr;
using frontend::StmtPtr;

namespace k {
struct ExecStmt {
  StmtPtr stmt;
};
struct EvalExpr {
  ExprPtr expr;
};
/// Pops rhs then lhs.
struct ApplyBinary {
  frontend::BinaryOp op;
};
struct ApplyNot {};
/// Pops the lhs; short-circuits or schedules the rhs.
struct LogicalRhs {
  frontend::LogicalOp op;
  ExprPtr rhs;
};
/// Converts the top value to tv(int, 0|1) by its truthiness.
struct Truth {};
/// Pops an address, pushes the field value.
struct ReadField {
  std::string field;
};
struct AssignVar {
  std::string name;
};
/// Pops the base address, then evaluates `value` and stores it.
struct AssignField {
  std::string field;
  ExprPtr value;
};
/// Pops the value and stores it into `addr.field`; the value stays on top.
struct StoreField {
  SymId addr;
  std::string field;
};
/// Pops `argc` arguments and enters the callee.
struct ApplyCall {
  std::string callee;
  std::size_t argc;
};
struct Discard {};
struct IfBranch {
  StmtPtr then;
  StmtPtr otherwise;
};
/// Evaluates the guard of `loop` (a While statement).
struct LoopHead {
  StmtPtr loop;
  int unfoldings;
};
/// `mark` is the fork counter when guard evaluation began.
struct LoopCheck {
  StmtPtr loop;
  int unfoldings;
  int mark;
};
struct ReturnValue {
  bool hasValue;
};
} // namespace k

using KItem =
    std::variant<k::ExecStmt, k::EvalExpr, k::ApplyBinary, k::ApplyNot,
                 k::LogicalRhs, k::Truth, k::ReadField, k::AssignVar,
                 k::AssignField, k::StoreField, k::ApplyCall, k::Discard,
                 k::IfBranch, k::LoopHead, k::LoopCheck, k::ReturnValue>;

using Environment = std::map<std::string, SymId>;

/// One function activation, used to bound recursion.
struct Activation {
  std::string function;
  int unfoldings = 0;
  int forkMark = 0;
};

struct Frame {
  Environment env;
  std::vector<KItem> k;
  std::vector<Value> values;
  Activation activation;
  std::map<std::string, CType> varTypes;
  CType returnType;
};

enum class Status { Running, Final, Error };

enum class ErrorKind { None, NullDeref, UndefinedValue, OpaqueDeref };
const char *errorKindName(ErrorKind kind);

struct Pattern {
  std::vector<KItem> k;
  std::vector<Value> values;
  Environment env;
  Heap heap;
  std::vector<Frame> callStack;
  Activation activation;
  /// Declared types of the variables in `env`'s frame.
  std::map<std::string, CType> varTypes;
  CType returnType = CType::voidType();

  constraints::Constraint pathCondition;
  constraints::Constraint memPathCondition;

  /// The input shape assumed along this path: lazily materialized objects
  /// and the fills of their fields, as they stood at call entry.
  Heap inputHeap;

  Status status = Status::Running;
  ErrorKind error = ErrorKind::None;
  std::string errorDetail;
  std::optional<Value> returnValue;

  /// Number of branching points with two or more feasible successors.
  int forks = 0;
  long steps = 0;
  /// Some satisfiability check on this path answered Unknown.
  bool approx = false;

  constraints::Constraint condition() const {
    return constraints::conjoin(pathCondition, memPathCondition);
  }
};

struct CallPattern {
  std::string fname;
  std::vector<Value> args;
  constraints::Constraint initialConstraint;
  Heap initialHeap;
};

/// Binds the parameters to fresh cells holding the arguments and schedules
/// the body. Throws ArityMismatch or TypeMismatch.
Pattern makeCallPattern(const frontend::ProgramIndex &index,
                        const CallPattern &cp, SymbolTable &symbols);

/// Throws NotFinal unless `p` is Final.
Value extractReturn(const Pattern &p);

/// One cell per line: `<k> ... </k>`, `<env> ... </env>`, and so on.
std::string render(const Pattern &p, const SymbolTable &symbols);

} // namespace specminer::symstate
