//===-- engine.h - Symbolic execution ---------------------------*- C++ -*-===//

#pragma once

#include "specminer/pattern.h"

#include <functional>

namespace specminer::engine {

using symstate::CallPattern;
using symstate::Pattern;

struct Limits {
  /// Loop iterations (and recursive re-entries) per path whose guard had to
  /// be decided by a fork. Iterations with an entailed guard are free.
  int unrollBound = 1;
  std::size_t maxPatterns = 4096;
  long maxSteps = 100000;
  /// Adds one lazy-initialization successor per compatible existing object.
  bool lazyAliasing = false;
};

/// Called with the two successor conditions of every guard split.
using ForkListener = std::function<void(const constraints::Constraint &,
                                        const constraints::Constraint &)>;

struct SeResult {
  /// Final and Error leaves in depth-first, true-branch-first order.
  std::vector<Pattern> leaves;
  int truncatedPaths = 0;
  bool patternBudgetExceeded = false;
  bool stepBudgetExceeded = false;

  bool complete() const {
    return truncatedPaths == 0 && !patternBudgetExceeded && !stepBudgetExceeded;
  }
  std::size_t finalCount() const;
  std::size_t errorCount() const;
};

struct StepStats {
  int truncatedPaths = 0;
  bool stepBudgetExceeded = false;
};

class Engine {
public:
  Engine(const frontend::ProgramIndex &index, Limits limits,
         SymbolTable &symbols)
      : index_(index), limits_(limits), symbols_(symbols) {}

  void setForkListener(ForkListener listener) { listener_ = std::move(listener); }

  SeResult se(const CallPattern &cp);

  /// One small step. Unsat successors are pruned; paths cut by the unroll
  /// bound are dropped and counted in `stats`.
  std::vector<Pattern> step(Pattern p, StepStats &stats);

  const Limits &limits() const { return limits_; }
  SymbolTable &symbols() { return symbols_; }
  const frontend::ProgramIndex &index() const { return index_; }

private:
  struct Branch;
  std::vector<Branch> decide(const Pattern &p, const constraints::Atom &atom,
                             bool intoMem, bool guard);
  std::vector<Branch> truth(const Pattern &p, const symstate::Value &v);
  std::vector<std::pair<Pattern, SymId>> deref(Pattern p, const symstate::Value &v,
                                               std::vector<Pattern> &errors);
  void readField(Pattern &p, SymId obj, const std::string &field);
  symstate::Value allocate(Pattern &p, const std::string &structName,
                           const std::string &hint);
  void enterCall(Pattern &p, const std::string &callee,
                 std::vector<symstate::Value> args, StepStats &stats,
                 std::vector<Pattern> &out);
  void doReturn(Pattern &p, symstate::Value v);

  const frontend::ProgramIndex &index_;
  Limits limits_;
  SymbolTable &symbols_;
  ForkListener listener_;
};

/// Convenience wrapper: se(m(args){phi}) with a fresh engine.
SeResult se(const frontend::ProgramIndex &index, const CallPattern &cp,
            const Limits &limits, SymbolTable &symbols,
            const ForkListener &listener = {});

} // namespace specminer::engine
