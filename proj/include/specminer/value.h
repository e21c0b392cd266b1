//===-- value.h - Typed symbolic values -------------------------*- C++ -*-===//

#pragma once

#include "specminer/constraint.h"
#include "specminer/ctype.h"
#include "specminer/symbols.h"

#include <variant>

namespace specminer::symstate {

struct Undef {
  bool operator==(const Undef &) const = default;
};
struct NullRef {
  bool operator==(const NullRef &) const = default;
};
/// An integer: a constant, a symbolic integer, or a sum/difference of them.
struct IntVal {
  constraints::Term term;
  bool operator==(const IntVal &) const = default;
};
/// An uninterpreted void* datum.
struct DataVal {
  SymId id;
  bool operator==(const DataVal &) const = default;
};
struct AddrVal {
  SymId id;
  bool operator==(const AddrVal &) const = default;
};

/// tv(T, V): the static type travels with the payload.
struct Value {
  CType type = CType::voidType();
  std::variant<Undef, NullRef, IntVal, DataVal, AddrVal> payload = Undef{};

  static Value undef(CType t = CType::voidType()) { return {std::move(t), Undef{}}; }
  static Value null(CType t = CType::voidPtr()) { return {std::move(t), NullRef{}}; }
  static Value integer(std::int64_t n) {
    return {CType::intType(), IntVal{constraints::Term::intConst(n)}};
  }
  static Value intTerm(constraints::Term t) {
    return {CType::intType(), IntVal{std::move(t)}};
  }
  static Value data(SymId id, CType t = CType::voidPtr()) {
    return {std::move(t), DataVal{id}};
  }
  static Value address(SymId id, CType t) { return {std::move(t), AddrVal{id}}; }

  bool isUndef() const { return std::holds_alternative<Undef>(payload); }
  bool isNull() const { return std::holds_alternative<NullRef>(payload); }
  const IntVal *asInt() const { return std::get_if<IntVal>(&payload); }
  const DataVal *asData() const { return std::get_if<DataVal>(&payload); }
  const AddrVal *asAddr() const { return std::get_if<AddrVal>(&payload); }

  /// Reference-sorted payloads (NULL, data, address) as a constraint term.
  bool isRef() const { return isNull() || asData() || asAddr(); }
  constraints::Term refTerm() const;

  /// Same payload under another static type, as done by the sanctioned
  /// void* <-> struct pointer conversion.
  Value as(CType t) const { return {std::move(t), payload}; }

  bool operator==(const Value &) const = default;
};

/// `tv(int, 2)`, `tv(struct List*, list)`, `NULL`, `undef`.
std::string render(const Value &v, const SymbolTable &symbols);
/// The bare payload: `2`, `list`, `?d`, `NULL`, `undef`.
std::string renderPayload(const Value &v, const SymbolTable &symbols);

constraints::SymbolNamer namerFor(const SymbolTable &symbols);

} // namespace specminer::symstate
