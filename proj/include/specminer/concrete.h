//===-- concrete.h - Concrete big-step interpreter --------------*- C++ -*-===//
//
// An independent reference semantics for KernelC over concrete heaps. It is
// deliberately written against the AST, sharing no code with the symbolic
// engine, so that it can serve as the oracle for the engine and for the
// inferred axioms.
//
//===----------------------------------------------------------------------===//

#pragma once

#include "specminer/program.h"

#include <map>
#include <string>
#include <vector>

namespace specminer::engine {

struct CValue {
  enum class Kind { Undef, Null, Int, Object, Token };
  Kind kind = Kind::Undef;
  /// The integer, object index or data token, by kind.
  std::int64_t n = 0;

  static CValue undef() { return {}; }
  static CValue null() { return {Kind::Null, 0}; }
  static CValue integer(std::int64_t v) { return {Kind::Int, v}; }
  static CValue object(std::int64_t index) { return {Kind::Object, index}; }
  static CValue token(std::int64_t t) { return {Kind::Token, t}; }

  auto operator<=>(const CValue &) const = default;
};

std::string render(const CValue &v);

struct CObject {
  std::string structName;
  std::map<std::string, CValue> fields;

  bool operator==(const CObject &) const = default;
};

struct ConcreteState {
  /// Objects are addressed by index; malloc appends.
  std::vector<CObject> heap;
  /// The callee's variables when it returned.
  std::map<std::string, CValue> env;
  CValue returnValue;
};

enum class ConcreteStatus { Ok, NullDeref, UndefinedValue, NonTermination };
const char *name(ConcreteStatus s);

struct ConcreteResult {
  ConcreteStatus status = ConcreteStatus::Ok;
  ConcreteState state;
};

/// Runs `fname(args)` on `state.heap`. Deterministic; loops run to
/// completion unless `maxSteps` statements and calls are exceeded.
ConcreteResult concreteRun(const frontend::ProgramIndex &index,
                           const std::string &fname, ConcreteState state,
                           const std::vector<CValue> &args,
                           long maxSteps = 100000);

} // namespace specminer::engine
