//===-- value.cpp - Typed symbolic values ---------------------------------===//

#include "specminer/value.h"

namespace specminer::symstate {

using constraints::Term;

Term Value::refTerm() const {
  if (auto *a = asAddr())
    return Term::addr(a->id);
  if (auto *d = asData())
    return Term::symData(d->id);
  return Term::null();
}

constraints::SymbolNamer namerFor(const SymbolTable &symbols) {
  return [&symbols](SymId id) { return symbols.label(id); };
}

std::string renderPayload(const Value &v, const SymbolTable &symbols) {
  if (v.isUndef())
    return "undef";
  if (v.isNull())
    return "NULL";
  if (auto *i = v.asInt())
    return constraints::render(i->term, namerFor(symbols));
  if (auto *d = v.asData())
    return "?" + symbols.label(d->id);
  return symbols.label(v.asAddr()->id);
}

std::string render(const Value &v, const SymbolTable &symbols) {
  if (v.isUndef() || v.isNull())
    return renderPayload(v, symbols);
  return "tv(" + v.type.str() + ", " + renderPayload(v, symbols) + ")";
}

} // namespace specminer::symstate
