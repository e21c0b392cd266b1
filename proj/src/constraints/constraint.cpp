//===-- constraint.cpp - Terms, atoms and conjunctions --------------------===//

#include "specminer/constraint.h"

#include "specminer/error.h"

#include <sstream>

namespace specminer::constraints {

Term Term::addr(SymId id) {
  Term t;
  t.kind_ = Kind::Addr;
  t.sym_ = id;
  return t;
}

Term Term::null() { return Term(); }

Term Term::fieldPath(SymId base, std::vector<std::string> fields) {
  if (fields.empty())
    throw Error(ErrorCode::TypeMismatch, "field path without fields");
  Term t;
  t.kind_ = Kind::FieldPath;
  t.sym_ = base;
  t.fields_ = std::move(fields);
  return t;
}

Term Term::intConst(std::int64_t value) {
  Term t;
  t.kind_ = Kind::IntConst;
  t.value_ = value;
  return t;
}

Term Term::symInt(SymId id) {
  Term t;
  t.kind_ = Kind::SymInt;
  t.sym_ = id;
  return t;
}

Term Term::symData(SymId id) {
  Term t;
  t.kind_ = Kind::SymData;
  t.sym_ = id;
  return t;
}

static void requireInt(const Term &lhs, const Term &rhs) {
  if (lhs.sort() != Sort::Int || rhs.sort() != Sort::Int)
    throw Error(ErrorCode::TypeMismatch, "arithmetic over non-integer terms");
}

Term Term::add(Term lhs, Term rhs) {
  requireInt(lhs, rhs);
  Term t;
  t.kind_ = Kind::Add;
  t.operands_ = std::make_shared<const std::pair<Term, Term>>(std::move(lhs),
                                                              std::move(rhs));
  return t;
}

Term Term::sub(Term lhs, Term rhs) {
  requireInt(lhs, rhs);
  Term t;
  t.kind_ = Kind::Sub;
  t.operands_ = std::make_shared<const std::pair<Term, Term>>(std::move(lhs),
                                                              std::move(rhs));
  return t;
}

Sort Term::sort() const {
  switch (kind_) {
  case Kind::IntConst:
  case Kind::SymInt:
  case Kind::Add:
  case Kind::Sub:
    return Sort::Int;
  default:
    return Sort::Ref;
  }
}

std::strong_ordering operator<=>(const Term &a, const Term &b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0)
    return c;
  switch (a.kind_) {
  case Term::Kind::Null:
    return std::strong_ordering::equal;
  case Term::Kind::IntConst:
    return a.value_ <=> b.value_;
  case Term::Kind::Addr:
  case Term::Kind::SymInt:
  case Term::Kind::SymData:
    return a.sym_ <=> b.sym_;
  case Term::Kind::FieldPath:
    if (auto c = a.sym_ <=> b.sym_; c != 0)
      return c;
    return a.fields_ <=> b.fields_;
  case Term::Kind::Add:
  case Term::Kind::Sub:
    if (auto c = a.lhs() <=> b.lhs(); c != 0)
      return c;
    return a.rhs() <=> b.rhs();
  }
  return std::strong_ordering::equal;
}

Atom::Atom(AtomOp op, Term lhs, Term rhs)
    : op(op), lhs(std::move(lhs)), rhs(std::move(rhs)) {
  if (this->lhs.sort() != this->rhs.sort())
    throw Error(ErrorCode::TypeMismatch, "atom compares terms of different sorts");
  if (op != AtomOp::Eq && op != AtomOp::Neq && this->lhs.sort() != Sort::Int)
    throw Error(ErrorCode::TypeMismatch, "ordering over non-integer terms");
}

std::strong_ordering operator<=>(const Atom &a, const Atom &b) {
  if (auto c = a.op <=> b.op; c != 0)
    return c;
  if (auto c = a.lhs <=> b.lhs; c != 0)
    return c;
  return a.rhs <=> b.rhs;
}

Atom negate(const Atom &atom) {
  switch (atom.op) {
  case AtomOp::Eq:
    return {AtomOp::Neq, atom.lhs, atom.rhs};
  case AtomOp::Neq:
    return {AtomOp::Eq, atom.lhs, atom.rhs};
  case AtomOp::Lt:
    return {AtomOp::Ge, atom.lhs, atom.rhs};
  case AtomOp::Le:
    return {AtomOp::Gt, atom.lhs, atom.rhs};
  case AtomOp::Gt:
    return {AtomOp::Le, atom.lhs, atom.rhs};
  case AtomOp::Ge:
    return {AtomOp::Lt, atom.lhs, atom.rhs};
  }
  return atom;
}

Constraint conjoin(const Constraint &a, const Constraint &b) {
  Constraint out = a;
  for (const Atom &atom : b)
    out.add(atom);
  return out;
}

Constraint withAtom(const Constraint &c, const Atom &atom) {
  Constraint out = c;
  out.add(atom);
  return out;
}

const char *opSymbol(AtomOp op) {
  switch (op) {
  case AtomOp::Eq:
    return "=";
  case AtomOp::Neq:
    return "!=";
  case AtomOp::Lt:
    return "<";
  case AtomOp::Le:
    return "<=";
  case AtomOp::Gt:
    return ">";
  case AtomOp::Ge:
    return ">=";
  }
  return "?";
}

std::string render(const Term &term, const SymbolNamer &namer) {
  switch (term.kind()) {
  case Term::Kind::Addr:
    return namer(term.sym());
  case Term::Kind::Null:
    return "NULL";
  case Term::Kind::FieldPath: {
    std::string out = namer(term.sym());
    for (const std::string &f : term.fields())
      out += "->" + f;
    return out;
  }
  case Term::Kind::IntConst:
    return std::to_string(term.value());
  case Term::Kind::SymInt:
  case Term::Kind::SymData:
    return "?" + namer(term.sym());
  case Term::Kind::Add:
  case Term::Kind::Sub: {
    std::string rhs = render(term.rhs(), namer);
    if (term.rhs().kind() == Term::Kind::Add ||
        term.rhs().kind() == Term::Kind::Sub)
      rhs = "(" + rhs + ")";
    return render(term.lhs(), namer) +
           (term.kind() == Term::Kind::Add ? " + " : " - ") + rhs;
  }
  }
  return "?";
}

std::string render(const Atom &atom, const SymbolNamer &namer) {
  return render(atom.lhs, namer) + " " + opSymbol(atom.op) + " " +
         render(atom.rhs, namer);
}

std::string render(const Constraint &c, const SymbolNamer &namer) {
  if (c.isTrue())
    return "true";
  std::ostringstream os;
  bool first = true;
  for (const Atom &atom : c) {
    if (!first)
      os << " /\\ ";
    first = false;
    os << render(atom, namer);
  }
  return os.str();
}

} // namespace specminer::constraints
