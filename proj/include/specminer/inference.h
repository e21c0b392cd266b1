//===-- inference.h - Axiom synthesis from observer runs --------*- C++ -*-===//

#pragma once

#include "specminer/engine.h"

#include <optional>
#include <set>

namespace specminer::inference {

/// o(As) where each entry of `args` indexes the modifier's parameters.
struct ObserverCall {
  std::string observer;
  std::vector<std::size_t> args;

  auto operator<=>(const ObserverCall &) const = default;
};

enum class ResultKind {
  Int,     ///< integer constant
  Null,    ///< NULL
  Arg,     ///< the input value of modifier parameter `arg`
  Root,    ///< the post-state value of the root parameter (list')
  Path,    ///< input content reached from parameter `arg` through `fields`
  Fresh,   ///< an address allocated during the run
  Literal, ///< any other symbolic value, kept as text
  Undef,   ///< no value (void return)
};

const char *name(ResultKind kind);

struct ResultValue {
  ResultKind kind = ResultKind::Undef;
  std::int64_t number = 0;
  std::size_t arg = 0;
  std::vector<std::string> fields;
  std::string text;
  bool integer = false; ///< integer-sorted value

  /// Kinds an observer equation may use as its right-hand side.
  bool expressible(bool post) const {
    return kind == ResultKind::Int || kind == ResultKind::Null ||
           kind == ResultKind::Arg || (post && kind == ResultKind::Root);
  }

  auto operator<=>(const ResultValue &) const = default;
};

/// `call = rhs`; an empty call stands for the keyword `ret`.
struct Equation {
  std::optional<ObserverCall> call;
  ResultValue rhs;

  bool isRet() const { return !call.has_value(); }

  /// Observer equations in universe order, then `ret`.
  friend std::strong_ordering operator<=>(const Equation &a, const Equation &b);
  friend bool operator==(const Equation &a, const Equation &b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

struct Axiom {
  std::set<Equation> pre;
  /// Includes the ret equation.
  std::set<Equation> post;
  std::set<int> provenance;
  bool approx = false;

  const Equation *ret() const;
};

/// Names used when printing equations.
struct Signature {
  std::string modifier;
  std::vector<std::string> params;
  std::vector<CType> paramTypes;
  /// Index of the first struct-pointer parameter, printed primed in posts.
  std::optional<std::size_t> root;
};

std::string renderValue(const ResultValue &v, const Signature &sig, bool post);
std::string renderCall(const ObserverCall &c, const Signature &sig, bool post);
std::string render(const Equation &e, const Signature &sig, bool post);

struct PatternSummary {
  int id;
  std::string status; ///< "final" or "error"
  std::string error;  ///< error kind for error leaves
};

struct SpecSet {
  Signature signature;
  engine::Limits limits;
  std::vector<Axiom> axioms;
  std::vector<PatternSummary> patterns;
  std::size_t finalPatterns = 0;
  std::size_t errorPatterns = 0;
  int truncatedPaths = 0;
  bool budgetExceeded = false;
  std::vector<std::string> diagnostics;
};

struct InferOptions {
  engine::Limits limits;
  /// Restricts the universe to these observers when set.
  std::optional<std::vector<std::string>> observers;
  /// Prefix for labels of allocated symbols.
  std::string seedLabel;
  engine::ForkListener forkListener;
  /// Receives every leaf of the modifier run with its id.
  std::function<void(int, const symstate::Pattern &, const SymbolTable &)>
      patternSink;
};

/// Every o(As) with o an observer other than the modifier, As an injective
/// selection of parameters matching o's parameter types exactly. Ordered by
/// observer name, then argument tuple.
std::vector<ObserverCall>
buildUniverse(const frontend::ProgramIndex &index, const std::string &modifier,
              const std::vector<CType> &argTypes,
              const std::optional<std::vector<std::string>> &observers = {});

/// The state an explanation observes: a heap, the condition it lives under,
/// and the values the universe's argument indices stand for.
struct ObservedState {
  const symstate::Heap *heap;
  constraints::Constraint condition;
  std::vector<symstate::Value> inputs;
  std::optional<symstate::Value> root; ///< post-state root value
  bool post = false;
};

struct Explanation {
  std::set<Equation> equations;
  bool approx = false;
};

/// An equation for every call whose symbolic run ends in Final leaves only,
/// all returning one expressible value.
Explanation explain(engine::Engine &engine,
                    const std::vector<ObserverCall> &universe,
                    const Signature &sig, const ObservedState &state);

/// Classifies a value under a condition, for the state's inputs and root.
ResultValue resolveValue(const symstate::Value &v,
                         const constraints::Constraint &condition,
                         const ObservedState &state, const Signature &sig,
                         const SymbolTable &symbols);

/// Merges axioms with equal posts when one pre contains the other (keeping
/// the smaller pre) and axioms with equal pres (keeping the common post
/// equations) until stable, drops entailed equations, and orders by pre size.
std::vector<Axiom> simplifySpec(std::vector<Axiom> axioms);

/// Infers the specification of one modifier. Throws UnknownFunction or
/// NotAModifier.
SpecSet inferSpec(const frontend::ProgramIndex &index,
                  const std::string &modifier, const InferOptions &options);

} // namespace specminer::inference
