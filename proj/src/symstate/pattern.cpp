//===-- pattern.cpp - Symbolic configurations -----------------------------===//

#include "specminer/pattern.h"

#include <sstream>

namespace specminer::symstate {

const char *errorKindName(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::None:
    return "None";
  case ErrorKind::NullDeref:
    return "NullDeref";
  case ErrorKind::UndefinedValue:
    return "UndefinedValue";
  case ErrorKind::OpaqueDeref:
    return "OpaqueDeref";
  }
  return "?";
}

namespace {

bool argFits(const Value &v, const CType &param) {
  if (v.type == param)
    return true;
  if (!param.isPointer())
    return param.isInt() && v.asInt();
  return v.isNull() || (v.type.isPointer() && (v.type.kind == CTypeKind::VoidPtr ||
                                               param.kind == CTypeKind::VoidPtr));
}

} // namespace

Pattern makeCallPattern(const frontend::ProgramIndex &index,
                        const CallPattern &cp, SymbolTable &symbols) {
  const frontend::FunctionDef &fn = index.function(cp.fname);
  if (fn.params.size() != cp.args.size())
    throw Error(ErrorCode::ArityMismatch,
                "'" + fn.name + "' takes " + std::to_string(fn.params.size()) +
                    " arguments, " + std::to_string(cp.args.size()) +
                    " supplied");
  Pattern p;
  p.heap = cp.initialHeap;
  p.pathCondition = cp.initialConstraint;
  p.returnType = fn.returnType;
  p.activation = {fn.name, 0, 0};
  for (std::size_t i = 0; i < fn.params.size(); ++i) {
    const frontend::Declarator &param = fn.params[i];
    if (!argFits(cp.args[i], param.type))
      throw Error(ErrorCode::TypeMismatch,
                  "argument " + std::to_string(i + 1) + " of '" + fn.name +
                      "' is not a " + param.type.str());
    SymId cell = symbols.fresh(SymKind::Cell, param.name);
    p.env.emplace(param.name, cell);
    p.heap.bindCell(cell, cp.args[i].as(param.type));
    p.varTypes.emplace(param.name, param.type);
  }
  for (const frontend::Declarator &local : fn.locals)
    p.varTypes.emplace(local.name, local.type);
  p.k.push_back(k::ReturnValue{false});
  p.k.push_back(k::ExecStmt{fn.body});
  return p;
}

Value extractReturn(const Pattern &p) {
  if (p.status != Status::Final || !p.returnValue)
    throw Error(ErrorCode::NotFinal, "pattern has not reached a return");
  return *p.returnValue;
}

std::string render(const Pattern &p, const SymbolTable &symbols) {
  auto namer = namerFor(symbols);
  std::ostringstream os;
  os << "<k> ";
  if (p.status == Status::Final)
    os << render(*p.returnValue, symbols);
  else if (p.status == Status::Error)
    os << "error(" << errorKindName(p.error) << ")";
  else
    os << p.k.size() << " pending items";
  os << " </k>\n<env> ";
  bool first = true;
  for (const auto &[name, cell] : p.env) {
    os << (first ? "" : ", ") << name << " |-> " << symbols.label(cell);
    first = false;
  }
  os << " </env>\n<heap> " << render(p.heap, symbols) << " </heap>\n"
     << "<path-condition> " << constraints::render(p.pathCondition, namer)
     << " </path-condition>\n"
     << "<mem-path-condition> " << constraints::render(p.memPathCondition, namer)
     << " </mem-path-condition>\n";
  return os.str();
}

} // namespace specminer::symstate
