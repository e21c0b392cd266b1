//===-- solver.h - Decision procedure for constraints -----------*- C++ -*-===//
//
// Congruence closure over the reference sort (addresses, data tokens, NULL
// and field paths) and difference-bound reasoning over the integer sort.
// The two sorts share no function symbols, so a conjunction is satisfiable
// iff both projections are.
//
//===----------------------------------------------------------------------===//

#pragma once

#include "specminer/constraint.h"

#include <optional>

namespace specminer::constraints {

enum class SatResult { Sat, Unsat, Unknown };
enum class Entailment { Yes, No, Unknown };

const char *name(SatResult r);

SatResult checkSat(const Constraint &c);

/// Yes iff c /\ !a is Unsat, No iff it is Sat.
Entailment entails(const Constraint &c, const Atom &a);

/// Drops atoms entailed by the rest and rewrites reference aliases to one
/// representative per class (NULL first, then the shortest name). Throws
/// UnsatInput on an unsatisfiable constraint.
Constraint simplifyConstraint(const Constraint &c, const SymbolNamer &namer);

/// Equivalence classes of reference terms under the equalities of a
/// constraint.
class RefCongruence {
public:
  explicit RefCongruence(const Constraint &c);

  bool consistent() const { return consistent_; }
  /// True when the constraint forces a = b. Terms absent from the constraint
  /// are only equal to themselves.
  bool equal(const Term &a, const Term &b) const;
  bool isNull(const Term &t) const { return equal(t, Term::null()); }

private:
  int node(const Term &t) const;
  int find(int n) const;

  struct Impl;
  std::shared_ptr<Impl> impl_;
  bool consistent_ = true;
};

/// The unique integer value of `t` forced by the non-disequality atoms of c,
/// when the bounds pin it down.
std::optional<std::int64_t> impliedValue(const Constraint &c, const Term &t);

} // namespace specminer::constraints
