//===-- support.cpp - Shared test fixtures and oracles --------------------===//

#include "support.h"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace specminer::testing {

using constraints::Atom;
using constraints::AtomOp;
using constraints::Constraint;
using constraints::Sort;
using constraints::Term;
using engine::CObject;
using engine::CValue;

std::string readData(const std::string &name) {
  std::ifstream in(std::string(SPECMINER_TEST_DATA) + "/" + name);
  if (!in)
    throw std::runtime_error("missing test data '" + name + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

frontend::ProgramIndex loadData(const std::string &name) {
  return frontend::load({readData(name), name});
}

frontend::ProgramIndex loadText(const std::string &text) {
  return frontend::load({text, "<test>"});
}

symstate::CallPattern inputCall(const frontend::ProgramIndex &index,
                                const std::string &fname, SymbolTable &symbols) {
  symstate::CallPattern cp{fname, {}, {}, {}};
  for (const frontend::Declarator &p : index.function(fname).params) {
    if (p.type.isStructPtr())
      cp.args.push_back(symstate::Value::address(
          symbols.fresh(SymKind::Address, p.name, {p.name}, true), p.type));
    else if (p.type.isPointer())
      cp.args.push_back(symstate::Value::data(
          symbols.fresh(SymKind::Data, p.name, {p.name}, true)));
    else
      cp.args.push_back(symstate::Value::intTerm(
          Term::symInt(symbols.fresh(SymKind::Int, p.name, {p.name}, true))));
  }
  return cp;
}

ConcreteList makeList(const std::vector<std::int64_t> &tokens) {
  ConcreteList l;
  l.head = CValue::null();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    CObject node{"List", {}};
    node.fields["data"] = CValue::token(tokens[i]);
    node.fields["prev"] =
        i == 0 ? CValue::null() : CValue::object(static_cast<std::int64_t>(i) - 1);
    node.fields["next"] = i + 1 == tokens.size()
                              ? CValue::null()
                              : CValue::object(static_cast<std::int64_t>(i) + 1);
    l.heap.push_back(std::move(node));
  }
  if (!tokens.empty())
    l.head = CValue::object(0);
  return l;
}

std::vector<std::vector<std::int64_t>> allSequences(int maxLength, int domain) {
  std::vector<std::vector<std::int64_t>> out{{}};
  std::vector<std::vector<std::int64_t>> layer{{}};
  for (int len = 1; len <= maxLength; ++len) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto &prefix : layer)
      for (int t = 0; t < domain; ++t) {
        auto s = prefix;
        s.push_back(t);
        next.push_back(s);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

//===----------------------------------------------------------------------===//
// Brute-force model search
//===----------------------------------------------------------------------===//

namespace {

using Assignment = std::map<SymId, std::int64_t>;

void collect(const Term &t, std::set<SymId> &refs, std::set<SymId> &ints) {
  switch (t.kind()) {
  case Term::Kind::Addr:
  case Term::Kind::SymData:
    refs.insert(t.sym());
    break;
  case Term::Kind::SymInt:
    ints.insert(t.sym());
    break;
  case Term::Kind::Add:
  case Term::Kind::Sub:
    collect(t.lhs(), refs, ints);
    collect(t.rhs(), refs, ints);
    break;
  case Term::Kind::FieldPath:
    throw std::logic_error("bruteForceSat: field paths are not supported");
  default:
    break;
  }
}

std::int64_t value(const Term &t, const Assignment &a) {
  switch (t.kind()) {
  case Term::Kind::Null:
    return 0;
  case Term::Kind::IntConst:
    return t.value();
  case Term::Kind::Add:
    return value(t.lhs(), a) + value(t.rhs(), a);
  case Term::Kind::Sub:
    return value(t.lhs(), a) - value(t.rhs(), a);
  default:
    return a.at(t.sym());
  }
}

bool holds(const Atom &atom, const Assignment &a) {
  std::int64_t l = value(atom.lhs, a), r = value(atom.rhs, a);
  switch (atom.op) {
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
  return false;
}

// Odometer over the variables; true when some assignment satisfies `atoms`.
bool search(const std::vector<SymId> &vars, std::int64_t lo, std::int64_t hi,
            const std::vector<Atom> &atoms) {
  Assignment a;
  for (SymId v : vars)
    a[v] = lo;
  while (true) {
    bool ok = true;
    for (const Atom &atom : atoms)
      if (!holds(atom, a)) {
        ok = false;
        break;
      }
    if (ok)
      return true;
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++a[vars[i]] <= hi)
        break;
      a[vars[i]] = lo;
    }
    if (i == vars.size())
      return false;
  }
}

bool holdsAll(const std::vector<Atom> &atoms, const Assignment &a) {
  for (const Atom &atom : atoms)
    if (!holds(atom, a))
      return false;
  return true;
}

// True when the two atom lists agree on every assignment of `vars`.
bool agree(const std::vector<SymId> &vars, std::int64_t lo, std::int64_t hi,
           const std::vector<Atom> &x, const std::vector<Atom> &y) {
  Assignment a;
  for (SymId v : vars)
    a[v] = lo;
  while (true) {
    if (holdsAll(x, a) != holdsAll(y, a))
      return false;
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++a[vars[i]] <= hi)
        break;
      a[vars[i]] = lo;
    }
    if (i == vars.size())
      return true;
  }
}

void split(const Constraint &c, std::set<SymId> &refs, std::set<SymId> &ints,
           std::vector<Atom> &refAtoms, std::vector<Atom> &intAtoms) {
  for (const Atom &atom : c) {
    collect(atom.lhs, refs, ints);
    collect(atom.rhs, refs, ints);
    (atom.lhs.sort() == Sort::Ref ? refAtoms : intAtoms).push_back(atom);
  }
}

} // namespace

bool bruteForceEquivalent(const Constraint &a, const Constraint &b, int objects,
                          std::int64_t lo, std::int64_t hi) {
  std::set<SymId> refs, ints;
  std::vector<Atom> ra, ia, rb, ib;
  split(a, refs, ints, ra, ia);
  split(b, refs, ints, rb, ib);
  return agree({refs.begin(), refs.end()}, 0, objects, ra, rb) &&
         agree({ints.begin(), ints.end()}, lo, hi, ia, ib);
}

bool bruteForceSat(const Constraint &c, int objects, std::int64_t lo,
                   std::int64_t hi) {
  std::set<SymId> refs, ints;
  std::vector<Atom> refAtoms, intAtoms;
  split(c, refs, ints, refAtoms, intAtoms);
  // The sorts share no variables, so the projections are searched apart.
  return search({refs.begin(), refs.end()}, 0, objects, refAtoms) &&
         search({ints.begin(), ints.end()}, lo, hi, intAtoms);
}

Constraint randomConjunction(std::mt19937 &rng, const std::vector<SymId> &addrs,
                             const std::vector<SymId> &ints, int atoms) {
  auto pick = [&rng](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  auto ref = [&] {
    std::size_t i = pick(addrs.size() + 1);
    return i == addrs.size() ? Term::null() : Term::addr(addrs[i]);
  };
  auto constant = [&] {
    return Term::intConst(static_cast<std::int64_t>(pick(9)) - 4);
  };
  auto var = [&] { return Term::symInt(ints[pick(ints.size())]); };
  Constraint c;
  for (int k = 0; k < atoms; ++k) {
    if (pick(2) == 0) {
      c.add(Atom(pick(2) ? AtomOp::Eq : AtomOp::Neq, ref(), ref()));
      continue;
    }
    Term lhs = var();
    switch (pick(3)) {
    case 1:
      lhs = Term::add(lhs, constant());
      break;
    case 2:
      lhs = Term::sub(lhs, var());
      break;
    }
    Term rhs = pick(2) ? constant() : var();
    c.add(Atom(static_cast<AtomOp>(pick(6)), lhs, rhs));
  }
  return c;
}

//===----------------------------------------------------------------------===//
// Axiom soundness
//===----------------------------------------------------------------------===//

namespace {

using inference::Equation;
using inference::ResultKind;

std::optional<CValue> observe(const frontend::ProgramIndex &index,
                              const std::string &observer,
                              const std::vector<CObject> &heap,
                              const std::vector<CValue> &args) {
  engine::ConcreteState st;
  st.heap = heap;
  engine::ConcreteResult r = engine::concreteRun(index, observer, st, args, 20000);
  if (r.status != engine::ConcreteStatus::Ok)
    return std::nullopt;
  return r.state.returnValue;
}

struct Observation {
  const std::vector<CObject> *heap;
  std::vector<CValue> inputs;
  std::optional<CValue> root; ///< post-state root, or none in the pre-state
  std::optional<CValue> ret;
  const std::vector<CObject> *inputHeap = nullptr;
};

// The concrete reading of a right-hand side, or nullopt when it has none.
std::optional<CValue> expected(const inference::ResultValue &v, const Observation &o) {
  switch (v.kind) {
  case ResultKind::Int:
    return CValue::integer(v.number);
  case ResultKind::Null:
    return CValue::null();
  case ResultKind::Arg:
    return o.inputs.at(v.arg);
  case ResultKind::Root:
    return o.root;
  case ResultKind::Undef:
    return CValue::undef();
  case ResultKind::Path: {
    CValue cur = o.inputs.at(v.arg);
    for (const std::string &f : v.fields) {
      if (cur.kind != CValue::Kind::Object || !o.inputHeap)
        return std::nullopt;
      cur = o.inputHeap->at(static_cast<std::size_t>(cur.n)).fields.at(f);
    }
    return cur;
  }
  default:
    return std::nullopt;
  }
}

bool satisfied(const frontend::ProgramIndex &index, const Equation &e,
               const inference::Signature &sig, const Observation &o) {
  if (e.isRet() && e.rhs.kind == ResultKind::Fresh)
    // An object allocated by the modifier lies beyond the input heap.
    return o.ret && o.ret->kind == CValue::Kind::Object && o.inputHeap &&
           o.ret->n >= static_cast<std::int64_t>(o.inputHeap->size());
  std::optional<CValue> want = expected(e.rhs, o);
  if (!want)
    return false;
  if (e.isRet())
    return o.ret && *o.ret == *want;
  std::vector<CValue> args;
  for (std::size_t a : e.call->args)
    args.push_back(o.root && sig.root && *sig.root == a ? *o.root : o.inputs.at(a));
  std::optional<CValue> got = observe(index, e.call->observer, *o.heap, args);
  return got && *got == *want;
}

} // namespace

SoundnessReport checkSoundness(const frontend::ProgramIndex &index,
                               const inference::SpecSet &spec,
                               const std::vector<ConcreteInput> &inputs) {
  SoundnessReport report;
  const inference::Signature &sig = spec.signature;
  for (std::size_t ai = 0; ai < spec.axioms.size(); ++ai) {
    const inference::Axiom &axiom = spec.axioms[ai];
    if (axiom.approx)
      continue;
    ++report.axiomsChecked;
    for (const ConcreteInput &in : inputs) {
      Observation pre{&in.heap, in.args, std::nullopt, std::nullopt};
      bool matches = true;
      for (const Equation &e : axiom.pre)
        if (!satisfied(index, e, sig, pre)) {
          matches = false;
          break;
        }
      if (!matches)
        continue;
      ++report.inputsMatchingPre;
      engine::ConcreteState st;
      st.heap = in.heap;
      engine::ConcreteResult run =
          engine::concreteRun(index, sig.modifier, st, in.args, 20000);
      Observation post{&run.state.heap, in.args, std::nullopt,
                       run.state.returnValue, &in.heap};
      if (sig.root)
        if (auto it = run.state.env.find(sig.params[*sig.root]);
            it != run.state.env.end())
          post.root = it->second;
      for (const Equation &e : axiom.post) {
        if (run.status == engine::ConcreteStatus::Ok &&
            satisfied(index, e, sig, post))
          continue;
        ++report.violations;
        if (report.details.size() < 5) {
          std::string args;
          for (const CValue &v : in.args)
            args += (args.empty() ? "" : ", ") + engine::render(v);
          report.details.push_back("axiom " + std::to_string(ai) + ": " +
                                   inference::render(e, sig, true) +
                                   " fails for " + sig.modifier + "(" + args +
                                   ") on " + std::to_string(in.heap.size()) +
                                   " nodes");
        }
      }
    }
  }
  return report;
}

std::vector<ConcreteInput> listInputs(const inference::Signature &sig,
                                      int maxLength, int domain) {
  std::vector<ConcreteInput> out;
  for (const auto &seq : allSequences(maxLength, domain)) {
    ConcreteList list = makeList(seq);
    std::vector<std::vector<CValue>> partial{{}};
    for (std::size_t i = 0; i < sig.paramTypes.size(); ++i) {
      std::vector<CValue> choices;
      const CType &t = sig.paramTypes[i];
      if (t.isStructPtr())
        choices.push_back(sig.root && *sig.root == i ? list.head : CValue::null());
      else if (t.isInt())
        for (int n = 0; n <= 2; ++n)
          choices.push_back(CValue::integer(n));
      else
        for (int tok = 0; tok < domain; ++tok)
          choices.push_back(CValue::token(tok));
      std::vector<std::vector<CValue>> next;
      for (const auto &p : partial)
        for (const CValue &c : choices) {
          auto q = p;
          q.push_back(c);
          next.push_back(q);
        }
      partial = std::move(next);
    }
    for (auto &args : partial)
      out.push_back({list.heap, std::move(args)});
  }
  return out;
}

} // namespace specminer::testing
