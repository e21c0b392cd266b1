//===-- heap.h - Symbolic heap ----------------------------------*- C++ -*-===//

#pragma once

#include "specminer/ast.h"
#include "specminer/value.h"

#include <map>
#include <optional>
#include <variant>

namespace specminer::symstate {

struct HeapObject {
  std::string structName;
  std::map<std::string, Value> fields;
  /// Materialized by lazy initialization: Undef fields stand for unknown
  /// input content and are filled on first read.
  bool lazy = false;

  bool operator==(const HeapObject &) const = default;
};

HeapObject makeObject(const frontend::StructDef &def, bool lazy);

/// Address and cell bindings. Cells hold plain values; addresses hold
/// objects.
class Heap {
public:
  using Binding = std::variant<HeapObject, Value>;

  bool bound(SymId id) const { return bindings_.count(id) != 0; }
  const HeapObject *object(SymId id) const;
  HeapObject *object(SymId id);
  const Value *cell(SymId id) const;

  void bindObject(SymId id, HeapObject obj);
  /// Throws UnboundAddress when `id` holds an object.
  void bindCell(SymId id, Value v);

  const std::map<SymId, Binding> &bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }

  bool operator==(const Heap &) const = default;

private:
  std::map<SymId, Binding> bindings_;
};

/// The stored value, or nullopt when the address is unbound, holds a plain
/// cell, or the field is Undef.
std::optional<Value> heapReadField(const Heap &heap, SymId addr,
                                   const std::string &field);

/// Persistent update of one field. Throws UnboundAddress when `addr` is not
/// bound to an object and UnknownField when the struct lacks `field`.
Heap heapWriteField(const Heap &heap, SymId addr, const std::string &field,
                    const Value &value);

/// `<heap> ... </heap>` body, bindings separated by commas.
std::string render(const Heap &heap, const SymbolTable &symbols);

} // namespace specminer::symstate
