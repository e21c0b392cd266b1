//===-- resolver.cpp - Name resolution and type checking ------------------===//

#include "specminer/parser.h"
#include "specminer/program.h"

#include <algorithm>
#include <cctype>

namespace specminer::frontend {

const FunctionDef &ProgramIndex::function(const std::string &name) const {
  auto it = functions.find(name);
  if (it == functions.end())
    throw Error(ErrorCode::UnknownFunction, "no function named '" + name + "'");
  return it->second;
}

const StructDef &ProgramIndex::structDef(const std::string &name) const {
  auto it = structs.find(name);
  if (it == structs.end())
    throw Error(ErrorCode::UnknownIdentifier, "no struct named '" + name + "'");
  return it->second;
}

namespace {

class Resolver {
public:
  explicit Resolver(ProgramIndex &index) : index_(index) {}

  void declareStructs(const std::vector<StructDef> &structs) {
    for (const StructDef &s : structs) {
      if (index_.structs.count(s.name))
        throw Error(ErrorCode::DuplicateDefinition,
                    "struct '" + s.name + "' defined twice", s.pos);
      index_.structs.emplace(s.name, s);
    }
    for (const StructDef &s : structs) {
      if (s.fields.empty())
        throw Error(ErrorCode::SyntaxError,
                    "struct '" + s.name + "' declares no fields", s.pos);
      for (std::size_t i = 0; i < s.fields.size(); ++i) {
        const Declarator &f = s.fields[i];
        checkObjectType(f.type, f.pos, "field '" + f.name + "'");
        for (std::size_t j = 0; j < i; ++j)
          if (s.fields[j].name == f.name)
            throw Error(ErrorCode::DuplicateDefinition,
                        "field '" + f.name + "' repeated in struct '" + s.name +
                            "'",
                        f.pos);
      }
    }
  }

  void declareFunctions(const std::vector<FunctionDef> &functions) {
    for (const FunctionDef &fn : functions) {
      if (index_.functions.count(fn.name))
        throw Error(ErrorCode::DuplicateDefinition,
                    "function '" + fn.name + "' defined twice", fn.pos);
      if (fn.returnType.isStructPtr())
        checkStructName(fn.returnType.structName, fn.pos);
      index_.functions.emplace(fn.name, fn);
    }
  }

  void checkFunction(const FunctionDef &fn) {
    fn_ = &fn;
    scope_.clear();
    auto declare = [&](const Declarator &d, const char *what) {
      checkObjectType(d.type, d.pos, std::string(what) + " '" + d.name + "'");
      if (scope_.count(d.name))
        throw Error(ErrorCode::DuplicateDefinition,
                    "'" + d.name + "' declared twice in '" + fn.name + "'",
                    d.pos);
      scope_.emplace(d.name, d.type);
    };
    for (const Declarator &p : fn.params)
      declare(p, "parameter");
    for (const Declarator &l : fn.locals)
      declare(l, "local");
    statement(*fn.body);
  }

private:
  void checkStructName(const std::string &name, SourcePos pos) {
    if (!index_.structs.count(name))
      throw Error(ErrorCode::UnknownIdentifier,
                  "unknown struct '" + name + "'", pos);
  }

  void checkObjectType(const CType &t, SourcePos pos, const std::string &what) {
    if (t.isVoid())
      throw Error(ErrorCode::TypeMismatch, what + " cannot have type void",
                  pos);
    if (t.isStructPtr())
      checkStructName(t.structName, pos);
  }

  // Checks that a value of type `from` may be stored where `to` is expected.
  void convert(const Expr &value, const CType &to, SourcePos pos) {
    const CType &from = value.type;
    if (from == to)
      return;
    if (from.isPointer() && to.isPointer()) {
      if (value.is<NullLit>())
        return;
      if (from.kind == CTypeKind::VoidPtr || to.kind == CTypeKind::VoidPtr) {
        index_.warnings.push_back(pos.str() + ": implicit conversion from '" +
                                  from.str() + "' to '" + to.str() + "' in '" +
                                  fn_->name + "'");
        return;
      }
    }
    throw Error(ErrorCode::TypeMismatch,
                "cannot convert '" + from.str() + "' to '" + to.str() + "'",
                pos);
  }

  void condition(Expr &e) {
    expression(e);
    if (e.type.isVoid())
      throw Error(ErrorCode::TypeMismatch, "void value used as a condition",
                  e.pos);
  }

  void statement(const Stmt &s) {
    if (auto *b = s.as<Block>()) {
      for (const StmtPtr &inner : b->stmts)
        statement(*inner);
    } else if (auto *e = s.as<ExprStmt>()) {
      expression(*e->expr, /*allowVoid=*/true);
    } else if (auto *i = s.as<If>()) {
      condition(*i->cond);
      statement(*i->then);
      if (i->otherwise)
        statement(*i->otherwise);
    } else if (auto *w = s.as<While>()) {
      condition(*w->cond);
      statement(*w->body);
    } else if (auto *r = s.as<Return>()) {
      if (!r->value) {
        if (!fn_->returnType.isVoid())
          throw Error(ErrorCode::TypeMismatch,
                      "'" + fn_->name + "' must return a value", s.pos);
        return;
      }
      if (fn_->returnType.isVoid())
        throw Error(ErrorCode::TypeMismatch,
                    "void function '" + fn_->name + "' returns a value", s.pos);
      expression(*r->value);
      convert(*r->value, fn_->returnType, s.pos);
    }
  }

  void expression(Expr &e, bool allowVoid = false) {
    std::visit([&](auto &node) { visit(e, node); }, e.node);
    if (e.type.isVoid() && !allowVoid)
      throw Error(ErrorCode::TypeMismatch, "void value used in an expression",
                  e.pos);
  }

  void visit(Expr &e, IntLit &) { e.type = CType::intType(); }
  void visit(Expr &e, NullLit &) { e.type = CType::voidPtr(); }

  void visit(Expr &e, VarRef &v) {
    auto it = scope_.find(v.name);
    if (it == scope_.end())
      throw Error(ErrorCode::UnknownIdentifier,
                  "'" + v.name + "' is not declared in '" + fn_->name + "'",
                  e.pos);
    e.type = it->second;
  }

  void visit(Expr &e, FieldAccess &f) {
    expression(*f.base);
    if (!f.base->type.isStructPtr())
      throw Error(ErrorCode::TypeMismatch,
                  "'->" + f.field + "' applied to '" + f.base->type.str() + "'",
                  e.pos);
    const StructDef &def = index_.structDef(f.base->type.structName);
    const Declarator *field = def.field(f.field);
    if (!field)
      throw Error(ErrorCode::UnknownField,
                  "struct '" + def.name + "' has no field '" + f.field + "'",
                  e.pos);
    e.type = field->type;
  }

  void visit(Expr &e, Binary &b) {
    expression(*b.lhs);
    expression(*b.rhs);
    const CType &l = b.lhs->type, &r = b.rhs->type;
    bool ok;
    if (b.op == BinaryOp::Eq || b.op == BinaryOp::Neq)
      ok = l == r || (l.isPointer() && r.isPointer() &&
                      (b.lhs->is<NullLit>() || b.rhs->is<NullLit>() ||
                       l.kind == CTypeKind::VoidPtr ||
                       r.kind == CTypeKind::VoidPtr));
    else
      ok = l.isInt() && r.isInt();
    if (!ok)
      throw Error(ErrorCode::TypeMismatch,
                  std::string("invalid operands to '") + spelling(b.op) +
                      "': '" + l.str() + "' and '" + r.str() + "'",
                  e.pos);
    e.type = CType::intType();
  }

  void visit(Expr &e, Logical &l) {
    condition(*l.lhs);
    condition(*l.rhs);
    e.type = CType::intType();
  }

  void visit(Expr &e, Not &n) {
    condition(*n.operand);
    e.type = CType::intType();
  }

  void visit(Expr &e, Call &c) {
    auto it = index_.functions.find(c.callee);
    if (it == index_.functions.end())
      throw Error(ErrorCode::UnknownIdentifier,
                  "call to undeclared function '" + c.callee + "'", e.pos);
    const FunctionDef &callee = it->second;
    if (callee.params.size() != c.args.size())
      throw Error(ErrorCode::TypeMismatch,
                  "'" + c.callee + "' expects " +
                      std::to_string(callee.params.size()) +
                      " arguments, got " + std::to_string(c.args.size()),
                  e.pos);
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      expression(*c.args[i]);
      convert(*c.args[i], callee.params[i].type, c.args[i]->pos);
    }
    e.type = callee.returnType;
  }

  void visit(Expr &e, Malloc &m) {
    checkStructName(m.structName, e.pos);
    e.type = CType::structPtr(m.structName);
    if (m.cast && !(*m.cast == e.type) && m.cast->kind != CTypeKind::VoidPtr)
      throw Error(ErrorCode::TypeMismatch,
                  "cast of 'struct " + m.structName + "' allocation to '" +
                      m.cast->str() + "'",
                  e.pos);
  }

  void visit(Expr &e, Assign &a) {
    expression(*a.target);
    expression(*a.value);
    convert(*a.value, a.target->type, e.pos);
    e.type = a.target->type;
  }

  ProgramIndex &index_;
  const FunctionDef *fn_ = nullptr;
  std::map<std::string, CType> scope_;
};

} // namespace

ProgramIndex resolve(ParsedProgram program) {
  ProgramIndex index;
  Resolver r(index);
  r.declareStructs(program.structs);
  r.declareFunctions(program.functions);
  for (const FunctionDef &fn : program.functions) {
    r.checkFunction(fn);
    index.modifiers.insert(fn.name);
    if (!fn.returnType.isVoid())
      index.observers.insert(fn.name);
  }
  return index;
}

ProgramIndex load(const SourceProgram &src) {
  bool blank = std::all_of(src.text.begin(), src.text.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  });
  if (blank)
    throw Error(ErrorCode::EmptySource, src.origin + " contains no source");
  return resolve(parse(tokenize(src)));
}

} // namespace specminer::frontend
