//===-- inference.cpp - Axiom synthesis from observer runs ----------------===//

#include "specminer/inference.h"

#include "specminer/solver.h"

#include <algorithm>
#include <functional>
#include <map>

namespace specminer::inference {

using constraints::Atom;
using constraints::AtomOp;
using constraints::Term;
using symstate::Status;
using symstate::Value;

const char *name(ResultKind kind) {
  switch (kind) {
  case ResultKind::Int:
    return "int";
  case ResultKind::Null:
    return "null";
  case ResultKind::Arg:
    return "arg";
  case ResultKind::Root:
    return "root";
  case ResultKind::Path:
    return "path";
  case ResultKind::Fresh:
    return "fresh";
  case ResultKind::Literal:
    return "literal";
  case ResultKind::Undef:
    return "undef";
  }
  return "?";
}

std::strong_ordering operator<=>(const Equation &a, const Equation &b) {
  if (a.isRet() != b.isRet())
    return a.isRet() ? std::strong_ordering::greater
                     : std::strong_ordering::less;
  if (!a.isRet())
    if (auto c = *a.call <=> *b.call; c != 0)
      return c;
  return a.rhs <=> b.rhs;
}

const Equation *Axiom::ret() const {
  for (const Equation &e : post)
    if (e.isRet())
      return &e;
  return nullptr;
}

namespace {

std::string paramName(const Signature &sig, std::size_t i, bool post) {
  std::string n = i < sig.params.size() ? sig.params[i] : "?";
  return post && sig.root && *sig.root == i ? n + "'" : n;
}

} // namespace

std::string renderValue(const ResultValue &v, const Signature &sig, bool post) {
  switch (v.kind) {
  case ResultKind::Int:
    return std::to_string(v.number);
  case ResultKind::Null:
    return "NULL";
  case ResultKind::Arg:
    return paramName(sig, v.arg, false);
  case ResultKind::Root:
    return sig.root ? paramName(sig, *sig.root, post) : "?";
  case ResultKind::Path: {
    std::string out = paramName(sig, v.arg, false);
    for (const std::string &f : v.fields)
      out += "->" + f;
    return out;
  }
  case ResultKind::Fresh:
  case ResultKind::Literal:
    return v.text;
  case ResultKind::Undef:
    return "undef";
  }
  return "?";
}

std::string renderCall(const ObserverCall &c, const Signature &sig, bool post) {
  std::string out = c.observer + "(";
  for (std::size_t i = 0; i < c.args.size(); ++i)
    out += (i ? ", " : "") + paramName(sig, c.args[i], post);
  return out + ")";
}

std::string render(const Equation &e, const Signature &sig, bool post) {
  return (e.isRet() ? std::string("ret") : renderCall(*e.call, sig, post)) +
         " = " + renderValue(e.rhs, sig, post);
}

std::vector<ObserverCall>
buildUniverse(const frontend::ProgramIndex &index, const std::string &modifier,
              const std::vector<CType> &argTypes,
              const std::optional<std::vector<std::string>> &observers) {
  std::vector<ObserverCall> out;
  for (const std::string &o : index.observers) {
    if (o == modifier)
      continue;
    if (observers &&
        std::find(observers->begin(), observers->end(), o) == observers->end())
      continue;
    const frontend::FunctionDef &fn = index.function(o);
    std::vector<std::size_t> chosen;
    std::vector<bool> used(argTypes.size(), false);
    std::function<void()> extend = [&]() {
      if (chosen.size() == fn.params.size()) {
        out.push_back({o, chosen});
        return;
      }
      const CType &want = fn.params[chosen.size()].type;
      for (std::size_t i = 0; i < argTypes.size(); ++i) {
        if (used[i] || !(argTypes[i] == want))
          continue;
        used[i] = true;
        chosen.push_back(i);
        extend();
        chosen.pop_back();
        used[i] = false;
      }
    };
    extend();
  }
  return out;
}

ResultValue resolveValue(const Value &v, const constraints::Constraint &cond,
                         const ObservedState &state, const Signature &sig,
                         const SymbolTable &symbols) {
  ResultValue out;
  if (v.isUndef())
    return out;

  auto pathValue = [&](SymId id) -> std::optional<ResultValue> {
    const SymbolInfo &info = symbols.info(id);
    if (!info.input || info.path.size() < 2)
      return std::nullopt;
    auto it = std::find(sig.params.begin(), sig.params.end(), info.path[0]);
    if (it == sig.params.end())
      return std::nullopt;
    ResultValue r;
    r.kind = ResultKind::Path;
    r.arg = static_cast<std::size_t>(it - sig.params.begin());
    r.fields.assign(info.path.begin() + 1, info.path.end());
    return r;
  };

  if (auto *i = v.asInt()) {
    out.integer = true;
    if (i->term.isIntConst()) {
      out.kind = ResultKind::Int;
      out.number = i->term.value();
      return out;
    }
    if (auto n = constraints::impliedValue(cond, i->term)) {
      out.kind = ResultKind::Int;
      out.number = *n;
      return out;
    }
    for (std::size_t a = 0; a < state.inputs.size(); ++a) {
      const symstate::IntVal *in = state.inputs[a].asInt();
      if (in && (in->term == i->term ||
                 constraints::entails(cond, Atom(AtomOp::Eq, i->term, in->term)) ==
                     constraints::Entailment::Yes)) {
        out.kind = ResultKind::Arg;
        out.arg = a;
        return out;
      }
    }
    if (i->term.kind() == Term::Kind::SymInt)
      if (auto p = pathValue(i->term.sym())) {
        p->integer = true;
        return *p;
      }
    out.kind = ResultKind::Literal;
    out.text = constraints::render(i->term, symstate::namerFor(symbols));
    return out;
  }

  constraints::RefCongruence cc(cond);
  Term t = v.refTerm();
  auto same = [&](const Value &other) {
    if (!other.isRef())
      return false;
    Term o = other.refTerm();
    return o == t || cc.equal(t, o);
  };
  if (v.isNull() || cc.isNull(t)) {
    out.kind = ResultKind::Null;
    return out;
  }
  if (state.post && state.root && sig.root && same(*state.root)) {
    out.kind = ResultKind::Root;
    return out;
  }
  for (std::size_t a = 0; a < state.inputs.size(); ++a) {
    if (same(state.inputs[a])) {
      out.kind = ResultKind::Arg;
      out.arg = a;
      return out;
    }
  }
  SymId id = v.asAddr() ? v.asAddr()->id : v.asData()->id;
  if (auto p = pathValue(id))
    return *p;
  out.kind = symbols.info(id).input ? ResultKind::Literal : ResultKind::Fresh;
  out.text = symstate::renderPayload(v, symbols);
  return out;
}

Explanation explain(engine::Engine &engine,
                    const std::vector<ObserverCall> &universe,
                    const Signature &sig, const ObservedState &state) {
  Explanation out;
  for (const ObserverCall &call : universe) {
    symstate::CallPattern cp{call.observer, {}, state.condition, *state.heap};
    for (std::size_t a : call.args)
      cp.args.push_back(state.post && state.root && sig.root && *sig.root == a
                            ? *state.root
                            : state.inputs[a]);
    engine::SeResult run = engine.se(cp);
    // A cut or budget-limited run may hide disagreeing leaves.
    if (!run.complete() || run.leaves.empty())
      continue;
    std::optional<ResultValue> agreed;
    bool conclusive = true, approx = false;
    for (const symstate::Pattern &leaf : run.leaves) {
      if (leaf.status != Status::Final) {
        conclusive = false;
        break;
      }
      ResultValue r = resolveValue(symstate::extractReturn(leaf),
                                   leaf.condition(), state, sig,
                                   engine.symbols());
      approx = approx || leaf.approx;
      if (!r.expressible(state.post) || (agreed && !(*agreed == r))) {
        conclusive = false;
        break;
      }
      agreed = r;
    }
    if (!conclusive)
      continue;
    out.equations.insert({call, *agreed});
    out.approx = out.approx || approx;
  }
  return out;
}

namespace {

// Drops equations implied by the others on the same side.
std::set<Equation> dropEntailed(const std::set<Equation> &side) {
  if (side.size() < 2)
    return side;
  SymbolTable local;
  std::map<std::string, SymId> names;
  auto sym = [&](const std::string &key, SymKind kind) {
    auto it = names.find(key);
    if (it != names.end())
      return it->second;
    return names.emplace(key, local.fresh(kind, key)).first->second;
  };
  Signature plain;
  auto atomFor = [&](const Equation &e) {
    std::string lhsKey =
        e.isRet() ? "ret" : "call:" + renderCall(*e.call, plain, false);
    for (std::size_t a : e.isRet() ? std::vector<std::size_t>{} : e.call->args)
      lhsKey += "," + std::to_string(a);
    std::string rhsKey = std::string("rhs:") + name(e.rhs.kind) + ":" +
                         std::to_string(e.rhs.number) + ":" +
                         std::to_string(e.rhs.arg) + ":" + e.rhs.text;
    for (const std::string &f : e.rhs.fields)
      rhsKey += "." + f;
    if (e.rhs.integer) {
      Term rhs = e.rhs.kind == ResultKind::Int
                     ? Term::intConst(e.rhs.number)
                     : Term::symInt(sym(rhsKey, SymKind::Int));
      return Atom(AtomOp::Eq, Term::symInt(sym(lhsKey, SymKind::Int)), rhs);
    }
    Term rhs = e.rhs.kind == ResultKind::Null
                   ? Term::null()
                   : Term::addr(sym(rhsKey, SymKind::Address));
    return Atom(AtomOp::Eq, Term::addr(sym(lhsKey, SymKind::Address)), rhs);
  };
  std::vector<std::pair<Equation, Atom>> items;
  constraints::Constraint all;
  for (const Equation &e : side) {
    items.emplace_back(e, atomFor(e));
    all.add(items.back().second);
  }
  if (constraints::checkSat(all) != constraints::SatResult::Sat)
    return side;
  std::vector<bool> keep(items.size(), true);
  for (std::size_t i = items.size(); i-- > 0;) {
    constraints::Constraint rest;
    for (std::size_t j = 0; j < items.size(); ++j)
      if (j != i && keep[j])
        rest.add(items[j].second);
    if (rest.contains(items[i].second) ||
        constraints::entails(rest, items[i].second) ==
            constraints::Entailment::Yes)
      keep[i] = false;
  }
  std::set<Equation> out;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (keep[i])
      out.insert(items[i].first);
  return out;
}

void absorb(Axiom &into, const Axiom &from) {
  into.provenance.insert(from.provenance.begin(), from.provenance.end());
  into.approx = into.approx || from.approx;
}

} // namespace

std::vector<Axiom> simplifySpec(std::vector<Axiom> axioms) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < axioms.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < axioms.size() && !changed; ++j) {
        Axiom &a = axioms[i];
        const Axiom &b = axioms[j];
        // Equal posts merge only when one pre contains the other: the smaller
        // pre is then exactly the disjunction. Intersecting unrelated pres
        // would claim the post for states neither axiom covers.
        if (a.post == b.post &&
            (std::includes(a.pre.begin(), a.pre.end(), b.pre.begin(), b.pre.end()) ||
             std::includes(b.pre.begin(), b.pre.end(), a.pre.begin(), a.pre.end()))) {
          std::set<Equation> common;
          std::set_intersection(a.pre.begin(), a.pre.end(), b.pre.begin(),
                                b.pre.end(), std::inserter(common, common.end()));
          a.pre = std::move(common);
        } else if (a.pre == b.pre) {
          // The observers cannot tell these paths apart, so only what holds
          // after both is claimed.
          std::set<Equation> common;
          std::set_intersection(a.post.begin(), a.post.end(), b.post.begin(),
                                b.post.end(), std::inserter(common, common.end()));
          a.post = std::move(common);
        } else {
          continue;
        }
        absorb(a, b);
        axioms.erase(axioms.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
      }
    }
  }
  for (Axiom &a : axioms) {
    a.pre = dropEntailed(a.pre);
    a.post = dropEntailed(a.post);
  }
  std::stable_sort(axioms.begin(), axioms.end(),
                   [](const Axiom &a, const Axiom &b) {
                     return a.pre.size() < b.pre.size();
                   });
  return axioms;
}

SpecSet inferSpec(const frontend::ProgramIndex &index,
                  const std::string &modifier, const InferOptions &options) {
  const frontend::FunctionDef &fn = index.function(modifier);
  if (!index.modifiers.count(modifier))
    throw Error(ErrorCode::NotAModifier, "'" + modifier + "' is not a modifier");

  SpecSet spec;
  spec.limits = options.limits;
  Signature &sig = spec.signature;
  sig.modifier = modifier;

  SymbolTable symbols;
  symbols.setPrefix(options.seedLabel);
  std::vector<Value> inputs;
  for (std::size_t i = 0; i < fn.params.size(); ++i) {
    const frontend::Declarator &p = fn.params[i];
    sig.params.push_back(p.name);
    sig.paramTypes.push_back(p.type);
    if (p.type.isStructPtr()) {
      if (!sig.root)
        sig.root = i;
      inputs.push_back(Value::address(
          symbols.fresh(SymKind::Address, p.name, {p.name}, true), p.type));
    } else if (p.type.isPointer()) {
      inputs.push_back(
          Value::data(symbols.fresh(SymKind::Data, p.name, {p.name}, true)));
    } else {
      inputs.push_back(Value::intTerm(
          Term::symInt(symbols.fresh(SymKind::Int, p.name, {p.name}, true))));
    }
  }
  if (!sig.root)
    spec.diagnostics.push_back("'" + modifier +
                               "' has no struct pointer parameter; post "
                               "equations use unprimed names");
  if (options.observers)
    for (const std::string &o : *options.observers)
      if (!index.observers.count(o))
        spec.diagnostics.push_back("'" + o + "' is not an observer; ignored");

  std::vector<ObserverCall> universe =
      buildUniverse(index, modifier, sig.paramTypes, options.observers);

  engine::Engine engine(index, options.limits, symbols);
  if (options.forkListener)
    engine.setForkListener(options.forkListener);
  engine::SeResult run = engine.se({modifier, inputs, {}, {}});

  spec.truncatedPaths = run.truncatedPaths;
  spec.budgetExceeded = run.patternBudgetExceeded || run.stepBudgetExceeded;
  spec.finalPatterns = run.finalCount();
  spec.errorPatterns = run.errorCount();

  std::vector<Axiom> axioms;
  for (std::size_t i = 0; i < run.leaves.size(); ++i) {
    const symstate::Pattern &leaf = run.leaves[i];
    int id = static_cast<int>(i);
    if (options.patternSink)
      options.patternSink(id, leaf, symbols);
    if (leaf.status != Status::Final) {
      spec.patterns.push_back({id, "error", symstate::errorKindName(leaf.error)});
      continue;
    }
    spec.patterns.push_back({id, "final", ""});

    constraints::Constraint cond = leaf.condition();
    ObservedState pre{&leaf.inputHeap, cond, inputs, std::nullopt, false};
    ObservedState post{&leaf.heap, cond, inputs, std::nullopt, true};
    if (sig.root)
      post.root = *leaf.heap.cell(leaf.env.at(sig.params[*sig.root]));

    Explanation ePre = explain(engine, universe, sig, pre);
    Explanation ePost = explain(engine, universe, sig, post);
    Axiom a;
    a.pre = std::move(ePre.equations);
    a.post = std::move(ePost.equations);
    a.post.insert({std::nullopt, resolveValue(symstate::extractReturn(leaf),
                                              cond, post, sig, symbols)});
    a.provenance.insert(id);
    a.approx = leaf.approx || ePre.approx || ePost.approx;
    axioms.push_back(std::move(a));
  }
  spec.axioms = simplifySpec(std::move(axioms));
  return spec;
}

} // namespace specminer::inference
