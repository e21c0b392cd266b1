//===-- concrete.cpp - Concrete big-step interpreter ----------------------===//

#include "specminer/concrete.h"

namespace specminer::engine {

using namespace frontend;

std::string render(const CValue &v) {
  switch (v.kind) {
  case CValue::Kind::Undef:
    return "undef";
  case CValue::Kind::Null:
    return "NULL";
  case CValue::Kind::Int:
    return std::to_string(v.n);
  case CValue::Kind::Object:
    return "#" + std::to_string(v.n);
  case CValue::Kind::Token:
    return "$" + std::to_string(v.n);
  }
  return "?";
}

const char *name(ConcreteStatus s) {
  switch (s) {
  case ConcreteStatus::Ok:
    return "Ok";
  case ConcreteStatus::NullDeref:
    return "NullDeref";
  case ConcreteStatus::UndefinedValue:
    return "UndefinedValue";
  case ConcreteStatus::NonTermination:
    return "NonTermination";
  }
  return "?";
}

namespace {

struct Abort {
  ConcreteStatus status;
};

struct Returned {
  CValue value;
};

using Vars = std::map<std::string, CValue>;

class Interp {
public:
  Interp(const ProgramIndex &index, std::vector<CObject> &heap, long maxSteps)
      : index_(index), heap_(heap), budget_(maxSteps) {}

  CValue call(const std::string &fname, const std::vector<CValue> &args,
              Vars *finalVars) {
    tick();
    const FunctionDef &fn = index_.function(fname);
    Vars vars;
    for (std::size_t i = 0; i < fn.params.size(); ++i)
      vars[fn.params[i].name] = args.at(i);
    for (const Declarator &l : fn.locals)
      vars[l.name] = CValue::undef();
    CValue result;
    try {
      exec(*fn.body, vars);
    } catch (Returned &r) {
      result = fn.returnType.isVoid() ? CValue::undef() : r.value;
    }
    if (finalVars)
      *finalVars = vars;
    return result;
  }

private:
  void tick() {
    if (--budget_ < 0)
      throw Abort{ConcreteStatus::NonTermination};
  }

  CObject &deref(const CValue &v) {
    if (v.kind == CValue::Kind::Null)
      throw Abort{ConcreteStatus::NullDeref};
    if (v.kind != CValue::Kind::Object || v.n < 0 ||
        v.n >= static_cast<std::int64_t>(heap_.size()))
      throw Abort{ConcreteStatus::UndefinedValue};
    return heap_[static_cast<std::size_t>(v.n)];
  }

  static bool truthy(const CValue &v) {
    switch (v.kind) {
    case CValue::Kind::Undef:
      throw Abort{ConcreteStatus::UndefinedValue};
    case CValue::Kind::Int:
      return v.n != 0;
    case CValue::Kind::Null:
      return false;
    default:
      return true;
    }
  }

  void exec(const Stmt &s, Vars &vars) {
    tick();
    if (auto *b = s.as<Block>()) {
      for (const StmtPtr &inner : b->stmts)
        exec(*inner, vars);
    } else if (auto *e = s.as<ExprStmt>()) {
      eval(*e->expr, vars);
    } else if (auto *i = s.as<If>()) {
      if (truthy(eval(*i->cond, vars)))
        exec(*i->then, vars);
      else if (i->otherwise)
        exec(*i->otherwise, vars);
    } else if (auto *w = s.as<While>()) {
      while (truthy(eval(*w->cond, vars)))
        exec(*w->body, vars);
    } else if (auto *r = s.as<Return>()) {
      throw Returned{r->value ? eval(*r->value, vars) : CValue::undef()};
    }
  }

  CValue eval(const Expr &e, Vars &vars) {
    if (auto *n = e.as<IntLit>())
      return CValue::integer(n->value);
    if (e.is<NullLit>())
      return CValue::null();
    if (auto *v = e.as<VarRef>())
      return vars.at(v->name);
    if (auto *f = e.as<FieldAccess>())
      return deref(eval(*f->base, vars)).fields.at(f->field);
    if (auto *b = e.as<Binary>()) {
      CValue l = eval(*b->lhs, vars);
      CValue r = eval(*b->rhs, vars);
      if (l.kind == CValue::Kind::Undef || r.kind == CValue::Kind::Undef)
        throw Abort{ConcreteStatus::UndefinedValue};
      switch (b->op) {
      case BinaryOp::Add:
        return CValue::integer(l.n + r.n);
      case BinaryOp::Sub:
        return CValue::integer(l.n - r.n);
      case BinaryOp::Eq:
        return CValue::integer(l == r);
      case BinaryOp::Neq:
        return CValue::integer(l != r);
      case BinaryOp::Lt:
        return CValue::integer(l.n < r.n);
      case BinaryOp::Le:
        return CValue::integer(l.n <= r.n);
      case BinaryOp::Gt:
        return CValue::integer(l.n > r.n);
      case BinaryOp::Ge:
        return CValue::integer(l.n >= r.n);
      }
    }
    if (auto *l = e.as<Logical>()) {
      bool lhs = truthy(eval(*l->lhs, vars));
      if (l->op == LogicalOp::And && !lhs)
        return CValue::integer(0);
      if (l->op == LogicalOp::Or && lhs)
        return CValue::integer(1);
      return CValue::integer(truthy(eval(*l->rhs, vars)));
    }
    if (auto *n = e.as<Not>())
      return CValue::integer(!truthy(eval(*n->operand, vars)));
    if (auto *c = e.as<Call>()) {
      std::vector<CValue> args;
      for (const ExprPtr &a : c->args)
        args.push_back(eval(*a, vars));
      return call(c->callee, args, nullptr);
    }
    if (auto *m = e.as<Malloc>()) {
      CObject obj{m->structName, {}};
      for (const Declarator &f : index_.structDef(m->structName).fields)
        obj.fields[f.name] = CValue::undef();
      heap_.push_back(std::move(obj));
      return CValue::object(static_cast<std::int64_t>(heap_.size()) - 1);
    }
    if (auto *a = e.as<Assign>()) {
      if (auto *v = a->target->as<VarRef>()) {
        CValue value = eval(*a->value, vars);
        return vars[v->name] = value;
      }
      auto *f = a->target->as<FieldAccess>();
      CValue base = eval(*f->base, vars);
      CValue value = eval(*a->value, vars);
      return deref(base).fields.at(f->field) = value;
    }
    throw Abort{ConcreteStatus::UndefinedValue};
  }

  const ProgramIndex &index_;
  std::vector<CObject> &heap_;
  long budget_;
};

} // namespace

ConcreteResult concreteRun(const ProgramIndex &index, const std::string &fname,
                           ConcreteState state, const std::vector<CValue> &args,
                           long maxSteps) {
  ConcreteResult result;
  result.state.heap = std::move(state.heap);
  Interp interp(index, result.state.heap, maxSteps);
  const FunctionDef &fn = index.function(fname);
  if (fn.params.size() != args.size())
    throw Error(ErrorCode::ArityMismatch,
                "'" + fname + "' takes " + std::to_string(fn.params.size()) +
                    " arguments");
  try {
    result.state.returnValue = interp.call(fname, args, &result.state.env);
  } catch (Abort &a) {
    result.status = a.status;
  }
  return result;
}

} // namespace specminer::engine
