//===-- engine.cpp - Small-step symbolic execution ------------------------===//

#include "specminer/engine.h"

#include "specminer/solver.h"

namespace specminer::engine {

using constraints::Atom;
using constraints::AtomOp;
using constraints::SatResult;
using constraints::Term;
using frontend::StmtPtr;
using frontend::BinaryOp;
using frontend::LogicalOp;
using symstate::ErrorKind;
using symstate::Status;
using symstate::Value;
namespace k = symstate::k;

std::size_t SeResult::finalCount() const {
  std::size_t n = 0;
  for (const Pattern &p : leaves)
    n += p.status == Status::Final;
  return n;
}

std::size_t SeResult::errorCount() const {
  return leaves.size() - finalCount();
}

struct Engine::Branch {
  Pattern p;
  bool holds;
};

namespace {

[[noreturn]] void stuck(const std::string &what) {
  throw Error(ErrorCode::StuckConfiguration, what);
}

Value pop(Pattern &p) {
  if (p.values.empty())
    stuck("value stack underflow");
  Value v = std::move(p.values.back());
  p.values.pop_back();
  return v;
}

void fail(Pattern &p, ErrorKind kind, std::string detail) {
  p.status = Status::Error;
  p.error = kind;
  p.errorDetail = std::move(detail);
  p.k.clear();
  p.values.clear();
}

// Keeps `p` unless its condition is refuted.
bool feasible(Pattern &p) {
  SatResult r = constraints::checkSat(p.condition());
  if (r == SatResult::Unknown)
    p.approx = true;
  return r != SatResult::Unsat;
}

AtomOp atomOp(BinaryOp op) {
  switch (op) {
  case BinaryOp::Eq:
    return AtomOp::Eq;
  case BinaryOp::Neq:
    return AtomOp::Neq;
  case BinaryOp::Lt:
    return AtomOp::Lt;
  case BinaryOp::Le:
    return AtomOp::Le;
  case BinaryOp::Gt:
    return AtomOp::Gt;
  case BinaryOp::Ge:
    return AtomOp::Ge;
  default:
    stuck("arithmetic operator used as a comparison");
  }
}

// Decides an atom between two syntactically known operands, if possible.
std::optional<bool> fold(const Atom &a) {
  if (a.lhs.isIntConst() && a.rhs.isIntConst()) {
    std::int64_t l = a.lhs.value(), r = a.rhs.value();
    switch (a.op) {
    case AtomOp::Eq:
      return l == r;
    case AtomOp::Neq:
      return l != r;
    case AtomOp::Lt:
      return l < r;
    case AtomOp::Le:
      return l <= r;
    case AtomOp::Gt:
      return l > r;
    case AtomOp::Ge:
      return l >= r;
    }
  }
  if (a.lhs == a.rhs) {
    switch (a.op) {
    case AtomOp::Eq:
    case AtomOp::Le:
    case AtomOp::Ge:
      return true;
    default:
      return false;
    }
  }
  return std::nullopt;
}

Term arith(BinaryOp op, const Term &l, const Term &r) {
  if (l.isIntConst() && r.isIntConst())
    return Term::intConst(op == BinaryOp::Add ? l.value() + r.value()
                                              : l.value() - r.value());
  if (r.isIntConst() && r.value() == 0)
    return l;
  return op == BinaryOp::Add ? Term::add(l, r) : Term::sub(l, r);
}

std::string joinPath(const std::vector<std::string> &path) {
  std::string out;
  for (const std::string &s : path)
    out += (out.empty() ? "" : ".") + s;
  return out;
}

} // namespace

std::vector<Engine::Branch> Engine::decide(const Pattern &p, const Atom &atom,
                                           bool intoMem, bool guard) {
  if (auto known = fold(atom))
    return {{p, *known}};
  Pattern t = p, f = p;
  auto &tc = intoMem ? t.memPathCondition : t.pathCondition;
  auto &fc = intoMem ? f.memPathCondition : f.pathCondition;
  tc.add(atom);
  fc.add(constraints::negate(atom));
  bool tOk = feasible(t), fOk = feasible(f);
  std::vector<Branch> out;
  if (tOk && fOk) {
    ++t.forks;
    ++f.forks;
    if (guard && listener_)
      listener_(t.condition(), f.condition());
  }
  if (tOk)
    out.push_back({std::move(t), true});
  if (fOk)
    out.push_back({std::move(f), false});
  return out;
}

std::vector<Engine::Branch> Engine::truth(const Pattern &p, const Value &v) {
  if (v.isUndef()) {
    Pattern e = p;
    fail(e, ErrorKind::UndefinedValue, "undefined value used as a condition");
    return {{std::move(e), false}};
  }
  if (auto *i = v.asInt())
    return decide(p, Atom(AtomOp::Neq, i->term, Term::intConst(0)), false, true);
  return decide(p, Atom(AtomOp::Neq, v.refTerm(), Term::null()), false, true);
}

std::vector<std::pair<Pattern, SymId>>
Engine::deref(Pattern p, const Value &v, std::vector<Pattern> &errors) {
  if (v.isUndef() || v.isNull() || v.asData() || v.asInt()) {
    if (v.isNull())
      fail(p, ErrorKind::NullDeref, "dereference of NULL");
    else if (v.isUndef())
      fail(p, ErrorKind::UndefinedValue, "dereference of an undefined pointer");
    else
      fail(p, ErrorKind::OpaqueDeref, "dereference of a non-address value");
    errors.push_back(std::move(p));
    return {};
  }
  SymId a = v.asAddr()->id;
  if (p.heap.object(a))
    return {{std::move(p), a}};

  constraints::Constraint cond = p.condition();
  constraints::RefCongruence cc(cond);
  Term at = Term::addr(a);
  if (cc.isNull(at)) {
    fail(p, ErrorKind::NullDeref, "dereference of NULL");
    errors.push_back(std::move(p));
    return {};
  }
  std::vector<SymId> objects;
  for (const auto &[id, binding] : p.heap.bindings())
    if (std::holds_alternative<symstate::HeapObject>(binding))
      objects.push_back(id);
  for (SymId b : objects)
    if (cc.equal(at, Term::addr(b)))
      return {{std::move(p), b}};

  if (!v.type.isStructPtr()) {
    fail(p, ErrorKind::OpaqueDeref, "dereference of a void pointer");
    errors.push_back(std::move(p));
    return {};
  }
  const frontend::StructDef &def = index_.structDef(v.type.structName);

  // Lazy initialization: NULL, a fresh object, or (optionally) an alias.
  std::vector<Pattern> nulls;
  std::vector<std::pair<Pattern, SymId>> objs;
  {
    Pattern n = p;
    n.memPathCondition.add(Atom(AtomOp::Eq, at, Term::null()));
    if (feasible(n)) {
      fail(n, ErrorKind::NullDeref, "dereference of NULL after lazy initialization");
      nulls.push_back(std::move(n));
    }
  }
  {
    Pattern f = p;
    f.memPathCondition.add(Atom(AtomOp::Neq, at, Term::null()));
    for (SymId b : objects)
      f.memPathCondition.add(Atom(AtomOp::Neq, at, Term::addr(b)));
    if (feasible(f)) {
      f.heap.bindObject(a, symstate::makeObject(def, true));
      f.inputHeap.bindObject(a, symstate::makeObject(def, true));
      objs.emplace_back(std::move(f), a);
    }
  }
  if (limits_.lazyAliasing) {
    for (SymId b : objects) {
      const symstate::HeapObject *obj = p.heap.object(b);
      if (obj->structName != def.name)
        continue;
      Pattern al = p;
      al.memPathCondition.add(Atom(AtomOp::Eq, at, Term::addr(b)));
      if (feasible(al))
        objs.emplace_back(std::move(al), b);
    }
  }
  if (nulls.size() + objs.size() >= 2) {
    for (Pattern &n : nulls)
      ++n.forks;
    for (auto &o : objs)
      ++o.first.forks;
  }
  for (Pattern &n : nulls)
    errors.push_back(std::move(n));
  return objs;
}

void Engine::readField(Pattern &p, SymId obj, const std::string &field) {
  symstate::HeapObject *o = p.heap.object(obj);
  auto it = o->fields.find(field);
  if (it == o->fields.end())
    stuck("read of unknown field '" + field + "'");
  if (it->second.isUndef() && o->lazy) {
    // First read of an input field: give it a name from its access path.
    const SymbolInfo &info = symbols_.info(obj);
    std::vector<std::string> path = info.path;
    if (path.empty())
      path.push_back(info.label);
    path.push_back(field);
    const CType &t = it->second.type;
    Value filled;
    if (t.isStructPtr())
      filled = Value::address(
          symbols_.fresh(SymKind::Address, joinPath(path), path, info.input), t);
    else if (t.isPointer())
      filled = Value::data(
          symbols_.fresh(SymKind::Data, joinPath(path), path, info.input), t);
    else
      filled = Value::intTerm(Term::symInt(
          symbols_.fresh(SymKind::Int, joinPath(path), path, info.input)));
    it->second = filled;
    if (symstate::HeapObject *in = p.inputHeap.object(obj))
      if (in->fields[field].isUndef())
        in->fields[field] = filled;
  }
  p.values.push_back(it->second);
}

Value Engine::allocate(Pattern &p, const std::string &structName,
                       const std::string &hint) {
  const frontend::StructDef &def = index_.structDef(structName);
  SymId id = symbols_.fresh(SymKind::Address, hint);
  Term t = Term::addr(id);
  p.memPathCondition.add(Atom(AtomOp::Neq, t, Term::null()));
  for (const auto &[other, binding] : p.heap.bindings())
    if (std::holds_alternative<symstate::HeapObject>(binding))
      p.memPathCondition.add(Atom(AtomOp::Neq, t, Term::addr(other)));
  p.heap.bindObject(id, symstate::makeObject(def, false));
  return Value::address(id, CType::structPtr(structName));
}

void Engine::enterCall(Pattern &p, const std::string &callee,
                       std::vector<Value> args, StepStats &stats,
                       std::vector<Pattern> &out) {
  const frontend::FunctionDef &fn = index_.function(callee);
  symstate::Activation act{callee, 0, p.forks};
  const symstate::Activation *prior = nullptr;
  if (p.activation.function == callee)
    prior = &p.activation;
  for (auto it = p.callStack.rbegin(); !prior && it != p.callStack.rend(); ++it)
    if (it->activation.function == callee)
      prior = &it->activation;
  if (prior) {
    act.unfoldings = prior->unfoldings + (p.forks > prior->forkMark ? 1 : 0);
    if (act.unfoldings > limits_.unrollBound) {
      ++stats.truncatedPaths;
      return;
    }
  }
  p.callStack.push_back({std::move(p.env), std::move(p.k), std::move(p.values),
                         p.activation, std::move(p.varTypes), p.returnType});
  p.env.clear();
  p.k.clear();
  p.values.clear();
  p.varTypes.clear();
  p.activation = act;
  p.returnType = fn.returnType;
  for (std::size_t i = 0; i < fn.params.size(); ++i) {
    const frontend::Declarator &param = fn.params[i];
    SymId cell = symbols_.fresh(SymKind::Cell, param.name);
    p.env.emplace(param.name, cell);
    p.heap.bindCell(cell, args[i].as(param.type));
    p.varTypes.emplace(param.name, param.type);
  }
  for (const frontend::Declarator &local : fn.locals)
    p.varTypes.emplace(local.name, local.type);
  p.k.push_back(k::ReturnValue{false});
  p.k.push_back(k::ExecStmt{fn.body});
  out.push_back(std::move(p));
}

void Engine::doReturn(Pattern &p, Value v) {
  v = p.returnType.isVoid() ? Value::undef() : v.as(p.returnType);
  if (p.callStack.empty()) {
    p.status = Status::Final;
    p.returnValue = std::move(v);
    p.k.clear();
    p.values.clear();
    return;
  }
  symstate::Frame frame = std::move(p.callStack.back());
  p.callStack.pop_back();
  p.env = std::move(frame.env);
  p.k = std::move(frame.k);
  p.values = std::move(frame.values);
  p.activation = frame.activation;
  p.varTypes = std::move(frame.varTypes);
  p.returnType = frame.returnType;
  p.values.push_back(std::move(v));
}

std::vector<Pattern> Engine::step(Pattern p, StepStats &stats) {
  if (p.status != Status::Running)
    return {std::move(p)};
  if (++p.steps > limits_.maxSteps) {
    stats.stepBudgetExceeded = true;
    return {};
  }
  if (p.k.empty())
    stuck("empty continuation on a running pattern");
  symstate::KItem item = std::move(p.k.back());
  p.k.pop_back();
  std::vector<Pattern> out;

  auto visitStmt = [&](const StmtPtr &sp) {
    using namespace frontend;
    const Stmt &s = *sp;
    if (auto *b = s.as<Block>()) {
      for (auto it = b->stmts.rbegin(); it != b->stmts.rend(); ++it)
        p.k.push_back(k::ExecStmt{*it});
    } else if (auto *e = s.as<ExprStmt>()) {
      p.k.push_back(k::Discard{});
      p.k.push_back(k::EvalExpr{e->expr});
    } else if (auto *i = s.as<If>()) {
      p.k.push_back(k::IfBranch{i->then, i->otherwise});
      p.k.push_back(k::EvalExpr{i->cond});
    } else if (s.as<While>()) {
      p.k.push_back(k::LoopHead{sp, 0});
    } else if (auto *r = s.as<Return>()) {
      p.k.push_back(k::ReturnValue{r->value != nullptr});
      if (r->value)
        p.k.push_back(k::EvalExpr{r->value});
    }
    out.push_back(std::move(p));
  };

  auto visitExpr = [&](const frontend::Expr &e) {
    using namespace frontend;
    if (auto *n = e.as<IntLit>()) {
      p.values.push_back(Value::integer(n->value));
    } else if (e.is<NullLit>()) {
      p.values.push_back(Value::null());
    } else if (auto *v = e.as<VarRef>()) {
      auto it = p.env.find(v->name);
      if (it != p.env.end()) {
        p.values.push_back(*p.heap.cell(it->second));
      } else {
        auto t = p.varTypes.find(v->name);
        if (t == p.varTypes.end())
          stuck("unbound variable '" + v->name + "'");
        p.values.push_back(Value::undef(t->second));
      }
    } else if (auto *f = e.as<FieldAccess>()) {
      p.k.push_back(k::ReadField{f->field});
      p.k.push_back(k::EvalExpr{f->base});
    } else if (auto *b = e.as<Binary>()) {
      p.k.push_back(k::ApplyBinary{b->op});
      p.k.push_back(k::EvalExpr{b->rhs});
      p.k.push_back(k::EvalExpr{b->lhs});
    } else if (auto *l = e.as<Logical>()) {
      p.k.push_back(k::LogicalRhs{l->op, l->rhs});
      p.k.push_back(k::EvalExpr{l->lhs});
    } else if (auto *n = e.as<Not>()) {
      p.k.push_back(k::ApplyNot{});
      p.k.push_back(k::EvalExpr{n->operand});
    } else if (auto *c = e.as<Call>()) {
      p.k.push_back(k::ApplyCall{c->callee, c->args.size()});
      for (auto it = c->args.rbegin(); it != c->args.rend(); ++it)
        p.k.push_back(k::EvalExpr{*it});
    } else if (auto *m = e.as<Malloc>()) {
      p.values.push_back(allocate(p, m->structName, "obj"));
    } else if (auto *a = e.as<Assign>()) {
      if (auto *var = a->target->as<VarRef>()) {
        p.k.push_back(k::AssignVar{var->name});
        if (auto *m = a->value->as<Malloc>())
          p.values.push_back(allocate(p, m->structName, var->name));
        else
          p.k.push_back(k::EvalExpr{a->value});
      } else {
        auto *fa = a->target->as<FieldAccess>();
        p.k.push_back(k::AssignField{fa->field, a->value});
        p.k.push_back(k::EvalExpr{fa->base});
      }
    }
    out.push_back(std::move(p));
  };

  auto pushEach = [&](std::vector<Branch> branches, auto &&onBranch) {
    for (Branch &b : branches) {
      if (b.p.status == Status::Running)
        onBranch(b.p, b.holds);
      out.push_back(std::move(b.p));
    }
  };

  std::visit(
      [&](auto &it) {
        using T = std::decay_t<decltype(it)>;
        if constexpr (std::is_same_v<T, k::ExecStmt>) {
          visitStmt(it.stmt);
        } else if constexpr (std::is_same_v<T, k::EvalExpr>) {
          visitExpr(*it.expr);
        } else if constexpr (std::is_same_v<T, k::ApplyBinary>) {
          Value r = pop(p), l = pop(p);
          if (l.isUndef() || r.isUndef()) {
            fail(p, ErrorKind::UndefinedValue,
                 std::string("undefined operand of '") + frontend::spelling(it.op) +
                     "'");
            out.push_back(std::move(p));
            return;
          }
          if (!frontend::isComparison(it.op)) {
            if (!l.asInt() || !r.asInt())
              stuck("arithmetic on non-integers");
            p.values.push_back(
                Value::intTerm(arith(it.op, l.asInt()->term, r.asInt()->term)));
            out.push_back(std::move(p));
            return;
          }
          Term lt = l.asInt() ? l.asInt()->term : l.refTerm();
          Term rt = r.asInt() ? r.asInt()->term : r.refTerm();
          pushEach(decide(p, Atom(atomOp(it.op), lt, rt), false, true),
                   [](Pattern &q, bool holds) {
                     q.values.push_back(Value::integer(holds ? 1 : 0));
                   });
        } else if constexpr (std::is_same_v<T, k::ApplyNot>) {
          Value v = pop(p);
          pushEach(truth(p, v), [](Pattern &q, bool holds) {
            q.values.push_back(Value::integer(holds ? 0 : 1));
          });
        } else if constexpr (std::is_same_v<T, k::Truth>) {
          Value v = pop(p);
          pushEach(truth(p, v), [](Pattern &q, bool holds) {
            q.values.push_back(Value::integer(holds ? 1 : 0));
          });
        } else if constexpr (std::is_same_v<T, k::LogicalRhs>) {
          Value v = pop(p);
          bool isAnd = it.op == LogicalOp::And;
          pushEach(truth(p, v), [&](Pattern &q, bool holds) {
            if (holds != isAnd) {
              q.values.push_back(Value::integer(holds ? 1 : 0));
            } else {
              q.k.push_back(k::Truth{});
              q.k.push_back(k::EvalExpr{it.rhs});
            }
          });
        } else if constexpr (std::is_same_v<T, k::ReadField>) {
          Value base = pop(p);
          std::vector<Pattern> errors;
          for (auto &[q, obj] : deref(std::move(p), base, errors)) {
            readField(q, obj, it.field);
            out.push_back(std::move(q));
          }
          for (Pattern &e : errors)
            out.push_back(std::move(e));
        } else if constexpr (std::is_same_v<T, k::AssignVar>) {
          Value v = pop(p);
          auto type = p.varTypes.find(it.name);
          if (type == p.varTypes.end())
            stuck("assignment to undeclared '" + it.name + "'");
          v = v.as(type->second);
          auto cell = p.env.find(it.name);
          SymId id = cell != p.env.end()
                         ? cell->second
                         : p.env.emplace(it.name, symbols_.fresh(SymKind::Cell, it.name))
                               .first->second;
          p.heap.bindCell(id, v);
          p.values.push_back(std::move(v));
          out.push_back(std::move(p));
        } else if constexpr (std::is_same_v<T, k::AssignField>) {
          Value base = pop(p);
          std::vector<Pattern> errors;
          for (auto &[q, obj] : deref(std::move(p), base, errors)) {
            q.k.push_back(k::StoreField{obj, it.field});
            q.k.push_back(k::EvalExpr{it.value});
            out.push_back(std::move(q));
          }
          for (Pattern &e : errors)
            out.push_back(std::move(e));
        } else if constexpr (std::is_same_v<T, k::StoreField>) {
          Value v = pop(p);
          p.heap = symstate::heapWriteField(p.heap, it.addr, it.field, v);
          p.values.push_back(p.heap.object(it.addr)->fields.at(it.field));
          out.push_back(std::move(p));
        } else if constexpr (std::is_same_v<T, k::ApplyCall>) {
          std::vector<Value> args(it.argc);
          for (std::size_t i = it.argc; i-- > 0;)
            args[i] = pop(p);
          enterCall(p, it.callee, std::move(args), stats, out);
        } else if constexpr (std::is_same_v<T, k::Discard>) {
          pop(p);
          out.push_back(std::move(p));
        } else if constexpr (std::is_same_v<T, k::IfBranch>) {
          Value v = pop(p);
          pushEach(truth(p, v), [&](Pattern &q, bool holds) {
            if (holds)
              q.k.push_back(k::ExecStmt{it.then});
            else if (it.otherwise)
              q.k.push_back(k::ExecStmt{it.otherwise});
          });
        } else if constexpr (std::is_same_v<T, k::LoopHead>) {
          auto *w = it.loop->template as<frontend::While>();
          p.k.push_back(k::LoopCheck{it.loop, it.unfoldings, p.forks});
          p.k.push_back(k::EvalExpr{w->cond});
          out.push_back(std::move(p));
        } else if constexpr (std::is_same_v<T, k::LoopCheck>) {
          Value v = pop(p);
          auto *w = it.loop->template as<frontend::While>();
          for (Branch &b : truth(p, v)) {
            if (b.p.status == Status::Running && b.holds) {
              int unfoldings = it.unfoldings + (b.p.forks > it.mark ? 1 : 0);
              if (unfoldings > limits_.unrollBound) {
                ++stats.truncatedPaths;
                continue;
              }
              b.p.k.push_back(k::LoopHead{it.loop, unfoldings});
              b.p.k.push_back(k::ExecStmt{w->body});
            }
            out.push_back(std::move(b.p));
          }
        } else if constexpr (std::is_same_v<T, k::ReturnValue>) {
          Value v = it.hasValue ? pop(p) : Value::undef();
          doReturn(p, std::move(v));
          out.push_back(std::move(p));
        }
      },
      item);
  return out;
}

SeResult Engine::se(const CallPattern &cp) {
  SeResult result;
  Pattern init = symstate::makeCallPattern(index_, cp, symbols_);
  if (!feasible(init))
    return result;
  std::vector<Pattern> work;
  work.push_back(std::move(init));
  StepStats stats;
  while (!work.empty()) {
    if (result.leaves.size() + work.size() > limits_.maxPatterns) {
      result.patternBudgetExceeded = true;
      break;
    }
    Pattern p = std::move(work.back());
    work.pop_back();
    if (p.status != Status::Running) {
      result.leaves.push_back(std::move(p));
      continue;
    }
    std::vector<Pattern> next = step(std::move(p), stats);
    for (auto it = next.rbegin(); it != next.rend(); ++it)
      work.push_back(std::move(*it));
  }
  result.truncatedPaths = stats.truncatedPaths;
  result.stepBudgetExceeded = stats.stepBudgetExceeded;
  return result;
}

SeResult se(const frontend::ProgramIndex &index, const CallPattern &cp,
            const Limits &limits, SymbolTable &symbols,
            const ForkListener &listener) {
  Engine engine(index, limits, symbols);
  if (listener)
    engine.setForkListener(listener);
  return engine.se(cp);
}

} // namespace specminer::engine
