//===-- constraint.h - Terms, atoms and conjunctions ------------*- C++ -*-===//
//
// The language of both condition cells. A Constraint is a set of atoms read
// conjunctively; the empty set is `true`.
//
//===----------------------------------------------------------------------===//

#pragma once

#include "specminer/symbols.h"

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace specminer::constraints {

enum class Sort { Ref, Int };

class Term {
public:
  enum class Kind { Addr, Null, FieldPath, IntConst, SymInt, SymData, Add, Sub };

  static Term addr(SymId id);
  static Term null();
  /// base->f1->f2...; `fields` must be non-empty.
  static Term fieldPath(SymId base, std::vector<std::string> fields);
  static Term intConst(std::int64_t value);
  static Term symInt(SymId id);
  static Term symData(SymId id);
  static Term add(Term lhs, Term rhs);
  static Term sub(Term lhs, Term rhs);

  Kind kind() const { return kind_; }
  Sort sort() const;
  SymId sym() const { return sym_; }
  std::int64_t value() const { return value_; }
  const std::vector<std::string> &fields() const { return fields_; }
  const Term &lhs() const { return operands_->first; }
  const Term &rhs() const { return operands_->second; }

  bool isIntConst() const { return kind_ == Kind::IntConst; }

  friend std::strong_ordering operator<=>(const Term &a, const Term &b);
  friend bool operator==(const Term &a, const Term &b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

private:
  Term() = default;

  Kind kind_ = Kind::Null;
  SymId sym_{};
  std::int64_t value_ = 0;
  std::vector<std::string> fields_;
  std::shared_ptr<const std::pair<Term, Term>> operands_;
};

enum class AtomOp { Eq, Neq, Lt, Le, Gt, Ge };

struct Atom {
  AtomOp op;
  Term lhs;
  Term rhs;

  /// Throws TypeMismatch when the sorts do not fit the operator.
  Atom(AtomOp op, Term lhs, Term rhs);

  friend std::strong_ordering operator<=>(const Atom &a, const Atom &b);
  friend bool operator==(const Atom &a, const Atom &b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

/// Atom-wise negation: Eq <-> Neq, Lt <-> Ge, Le <-> Gt.
Atom negate(const Atom &atom);

class Constraint {
public:
  Constraint() = default;
  Constraint(std::initializer_list<Atom> atoms) : atoms_(atoms) {}

  static Constraint top() { return {}; }

  void add(const Atom &atom) { atoms_.insert(atom); }
  bool contains(const Atom &atom) const { return atoms_.count(atom) != 0; }
  bool isTrue() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  auto begin() const { return atoms_.begin(); }
  auto end() const { return atoms_.end(); }
  const std::set<Atom> &atoms() const { return atoms_; }

  bool operator==(const Constraint &) const = default;

private:
  std::set<Atom> atoms_;
};

Constraint conjoin(const Constraint &a, const Constraint &b);
Constraint withAtom(const Constraint &c, const Atom &atom);

using SymbolNamer = std::function<std::string(SymId)>;

/// `a != NULL`, `a->next = NULL`, `?x > ?y`.
std::string render(const Term &term, const SymbolNamer &namer);
std::string render(const Atom &atom, const SymbolNamer &namer);
/// Atoms joined with ` /\ `; `true` when empty.
std::string render(const Constraint &c, const SymbolNamer &namer);

const char *opSymbol(AtomOp op);

} // namespace specminer::constraints
