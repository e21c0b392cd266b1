//===-- heap.cpp - Symbolic heap ------------------------------------------===//

#include "specminer/heap.h"

#include <sstream>

namespace specminer::symstate {

HeapObject makeObject(const frontend::StructDef &def, bool lazy) {
  HeapObject obj{def.name, {}, lazy};
  for (const frontend::Declarator &f : def.fields)
    obj.fields.emplace(f.name, Value::undef(f.type));
  return obj;
}

const HeapObject *Heap::object(SymId id) const {
  auto it = bindings_.find(id);
  return it == bindings_.end() ? nullptr : std::get_if<HeapObject>(&it->second);
}

HeapObject *Heap::object(SymId id) {
  auto it = bindings_.find(id);
  return it == bindings_.end() ? nullptr : std::get_if<HeapObject>(&it->second);
}

const Value *Heap::cell(SymId id) const {
  auto it = bindings_.find(id);
  return it == bindings_.end() ? nullptr : std::get_if<Value>(&it->second);
}

void Heap::bindObject(SymId id, HeapObject obj) {
  bindings_[id] = std::move(obj);
}

void Heap::bindCell(SymId id, Value v) {
  auto it = bindings_.find(id);
  if (it != bindings_.end() && std::holds_alternative<HeapObject>(it->second))
    throw Error(ErrorCode::UnboundAddress,
                "cell write to an address holding an object");
  bindings_[id] = std::move(v);
}

std::optional<Value> heapReadField(const Heap &heap, SymId addr,
                                   const std::string &field) {
  const HeapObject *obj = heap.object(addr);
  if (!obj)
    return std::nullopt;
  auto it = obj->fields.find(field);
  if (it == obj->fields.end() || it->second.isUndef())
    return std::nullopt;
  return it->second;
}

Heap heapWriteField(const Heap &heap, SymId addr, const std::string &field,
                    const Value &value) {
  const HeapObject *obj = heap.object(addr);
  if (!obj)
    throw Error(ErrorCode::UnboundAddress,
                "field write through an address not bound to an object");
  auto it = obj->fields.find(field);
  if (it == obj->fields.end())
    throw Error(ErrorCode::UnknownField,
                "struct '" + obj->structName + "' has no field '" + field + "'");
  Heap out = heap;
  out.object(addr)->fields[field] = value.as(it->second.type);
  return out;
}

std::string render(const Heap &heap, const SymbolTable &symbols) {
  std::ostringstream os;
  bool first = true;
  for (const auto &[id, binding] : heap.bindings()) {
    os << (first ? "" : ", ") << symbols.label(id) << " |-> ";
    first = false;
    if (auto *v = std::get_if<Value>(&binding)) {
      os << render(*v, symbols);
      continue;
    }
    const HeapObject &obj = std::get<HeapObject>(binding);
    os << "(";
    bool firstField = true;
    for (const auto &[name, v] : obj.fields) {
      os << (firstField ? "" : ", ") << name << " |-> "
         << renderPayload(v, symbols);
      firstField = false;
    }
    os << ")";
  }
  return os.str();
}

} // namespace specminer::symstate
