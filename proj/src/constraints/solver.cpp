//===-- solver.cpp - Decision procedure for constraints -------------------===//

#include "specminer/solver.h"

#include "specminer/error.h"

#include <algorithm>
#include <limits>
#include <map>

namespace specminer::constraints {

const char *name(SatResult r) {
  switch (r) {
  case SatResult::Sat:
    return "sat";
  case SatResult::Unsat:
    return "unsat";
  case SatResult::Unknown:
    return "unknown";
  }
  return "?";
}

//===----------------------------------------------------------------------===//
// Reference sort: congruence closure
//===----------------------------------------------------------------------===//

struct RefCongruence::Impl {
  std::map<Term, int> ids;
  // For field nodes: (base node, field name). Root nodes have base -1.
  std::vector<std::pair<int, std::string>> shape;
  mutable std::vector<int> parent;

  int intern(const Term &t) {
    if (auto it = ids.find(t); it != ids.end())
      return it->second;
    int base = -1;
    std::string field;
    if (t.kind() == Term::Kind::FieldPath) {
      std::vector<std::string> prefix(t.fields().begin(), t.fields().end() - 1);
      base = prefix.empty() ? intern(Term::addr(t.sym()))
                            : intern(Term::fieldPath(t.sym(), prefix));
      field = t.fields().back();
    }
    int id = static_cast<int>(shape.size());
    ids.emplace(t, id);
    shape.emplace_back(base, field);
    parent.push_back(id);
    return id;
  }

  int find(int n) const {
    while (parent[n] != n) {
      parent[n] = parent[parent[n]];
      n = parent[n];
    }
    return n;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }

  void close() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < shape.size(); ++i) {
        if (shape[i].first < 0)
          continue;
        for (std::size_t j = i + 1; j < shape.size(); ++j) {
          if (shape[j].first < 0 || shape[i].second != shape[j].second)
            continue;
          if (find(shape[i].first) == find(shape[j].first) &&
              unite(static_cast<int>(i), static_cast<int>(j)))
            changed = true;
        }
      }
    }
  }
};

RefCongruence::RefCongruence(const Constraint &c)
    : impl_(std::make_shared<Impl>()) {
  impl_->intern(Term::null());
  for (const Atom &a : c) {
    if (a.lhs.sort() != Sort::Ref)
      continue;
    int l = impl_->intern(a.lhs);
    int r = impl_->intern(a.rhs);
    if (a.op == AtomOp::Eq)
      impl_->unite(l, r);
  }
  impl_->close();
  for (const Atom &a : c) {
    if (a.lhs.sort() == Sort::Ref && a.op == AtomOp::Neq &&
        impl_->find(impl_->ids.at(a.lhs)) == impl_->find(impl_->ids.at(a.rhs)))
      consistent_ = false;
  }
}

int RefCongruence::node(const Term &t) const {
  auto it = impl_->ids.find(t);
  return it == impl_->ids.end() ? -1 : it->second;
}

int RefCongruence::find(int n) const { return impl_->find(n); }

bool RefCongruence::equal(const Term &a, const Term &b) const {
  if (a == b)
    return true;
  int na = node(a), nb = node(b);
  if (na < 0 || nb < 0)
    return false;
  return find(na) == find(nb);
}

//===----------------------------------------------------------------------===//
// Integer sort: difference bounds
//===----------------------------------------------------------------------===//

namespace {

struct Linear {
  std::map<SymId, std::int64_t> coeffs;
  std::int64_t constant = 0;

  void addScaled(const Linear &o, std::int64_t k) {
    for (auto [v, c] : o.coeffs) {
      std::int64_t &slot = coeffs[v];
      slot += k * c;
      if (slot == 0)
        coeffs.erase(v);
    }
    constant += k * o.constant;
  }
};

Linear linearize(const Term &t) {
  Linear out;
  switch (t.kind()) {
  case Term::Kind::IntConst:
    out.constant = t.value();
    break;
  case Term::Kind::SymInt:
    out.coeffs[t.sym()] = 1;
    break;
  case Term::Kind::Add:
    out = linearize(t.lhs());
    out.addScaled(linearize(t.rhs()), 1);
    break;
  case Term::Kind::Sub:
    out = linearize(t.lhs());
    out.addScaled(linearize(t.rhs()), -1);
    break;
  default:
    throw Error(ErrorCode::TypeMismatch, "linearize over a reference term");
  }
  return out;
}

// sum(coeffs) + constant <= 0
using LeForm = Linear;

LeForm difference(const Term &lhs, const Term &rhs, std::int64_t shift) {
  LeForm f = linearize(lhs);
  f.addScaled(linearize(rhs), -1);
  f.constant += shift;
  return f;
}

LeForm negated(const LeForm &f) {
  LeForm out;
  out.addScaled(f, -1);
  return out;
}

std::int64_t floorDiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

// Edge (from, to, w) encodes x_to - x_from <= w. Node 0 is the zero node.
struct Edge {
  int from, to;
  std::int64_t weight;
};

class DifferenceGraph {
public:
  int var(SymId v) {
    auto [it, inserted] = vars_.emplace(v, static_cast<int>(vars_.size()) + 1);
    return it->second;
  }
  int lookup(SymId v) const {
    auto it = vars_.find(v);
    return it == vars_.end() ? -1 : it->second;
  }

  enum class AddResult { Added, TriviallyFalse, Trivial, NotDifference };

  AddResult add(const LeForm &f, std::vector<Edge> &edges) {
    std::int64_t bound = -f.constant; // sum(coeffs) <= bound
    if (f.coeffs.empty())
      return bound >= 0 ? AddResult::Trivial : AddResult::TriviallyFalse;
    if (f.coeffs.size() == 1) {
      auto [v, c] = *f.coeffs.begin();
      int n = var(v);
      if (c > 0)
        edges.push_back({0, n, floorDiv(bound, c)});
      else // -|c| v <= bound  <=>  v >= ceil(-bound/|c|)  <=>  0 - v <= -ceil
        edges.push_back({n, 0, floorDiv(bound, -c)});
      return AddResult::Added;
    }
    if (f.coeffs.size() == 2) {
      auto first = *f.coeffs.begin();
      auto second = *std::next(f.coeffs.begin());
      if (first.second == -second.second) {
        auto pos = first.second > 0 ? first : second;
        auto neg = first.second > 0 ? second : first;
        // pos.c * (x - y) <= bound
        edges.push_back(
            {var(neg.first), var(pos.first), floorDiv(bound, pos.second)});
        return AddResult::Added;
      }
    }
    return AddResult::NotDifference;
  }

  int nodeCount() const { return static_cast<int>(vars_.size()) + 1; }

private:
  std::map<SymId, int> vars_;
};

bool feasible(int nodes, const std::vector<Edge> &edges) {
  // Implicit source at distance 0 to every node.
  std::vector<std::int64_t> dist(nodes, 0);
  for (int round = 0; round <= nodes; ++round) {
    bool changed = false;
    for (const Edge &e : edges) {
      if (dist[e.from] + e.weight < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.weight;
        changed = true;
      }
    }
    if (!changed)
      return true;
  }
  return false;
}

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

std::vector<std::int64_t> shortestFrom(int nodes, const std::vector<Edge> &edges,
                                       int source, bool reversed) {
  std::vector<std::int64_t> dist(nodes, kInf);
  dist[source] = 0;
  for (int round = 0; round < nodes; ++round) {
    for (const Edge &e : edges) {
      int from = reversed ? e.to : e.from;
      int to = reversed ? e.from : e.to;
      if (dist[from] != kInf && dist[from] + e.weight < dist[to])
        dist[to] = dist[from] + e.weight;
    }
  }
  return dist;
}

struct IntProblem {
  DifferenceGraph graph;
  std::vector<Edge> edges;
  std::vector<std::pair<LeForm, LeForm>> splits; // disequalities
  bool triviallyFalse = false;
  bool incomplete = false;
};

IntProblem collect(const Constraint &c, bool withSplits) {
  IntProblem p;
  auto addForm = [&](const LeForm &f) {
    switch (p.graph.add(f, p.edges)) {
    case DifferenceGraph::AddResult::TriviallyFalse:
      p.triviallyFalse = true;
      break;
    case DifferenceGraph::AddResult::NotDifference:
      p.incomplete = true;
      break;
    default:
      break;
    }
  };
  for (const Atom &a : c) {
    if (a.lhs.sort() != Sort::Int)
      continue;
    switch (a.op) {
    case AtomOp::Lt:
      addForm(difference(a.lhs, a.rhs, 1));
      break;
    case AtomOp::Le:
      addForm(difference(a.lhs, a.rhs, 0));
      break;
    case AtomOp::Gt:
      addForm(difference(a.rhs, a.lhs, 1));
      break;
    case AtomOp::Ge:
      addForm(difference(a.rhs, a.lhs, 0));
      break;
    case AtomOp::Eq: {
      LeForm f = difference(a.lhs, a.rhs, 0);
      addForm(f);
      addForm(negated(f));
      break;
    }
    case AtomOp::Neq: {
      if (!withSplits)
        break;
      LeForm f = difference(a.lhs, a.rhs, 0);
      if (f.coeffs.empty()) {
        if (f.constant == 0)
          p.triviallyFalse = true;
        break;
      }
      LeForm below = f; // lhs - rhs <= -1
      below.constant += 1;
      LeForm above = negated(f); // rhs - lhs <= -1
      above.constant += 1;
      p.splits.emplace_back(below, above);
      break;
    }
    }
  }
  return p;
}

constexpr int kMaxSplitChecks = 4096;

// Depth-first over disequality case splits. Returns Sat/Unsat, or Unknown
// when a split is not a difference constraint or the budget runs out.
SatResult searchSplits(IntProblem &p, std::vector<Edge> edges, std::size_t next,
                       int &budget) {
  if (--budget < 0)
    return SatResult::Unknown;
  if (!feasible(p.graph.nodeCount(), edges))
    return SatResult::Unsat;
  if (next == p.splits.size())
    return SatResult::Sat;
  bool unknown = false;
  for (const LeForm *side : {&p.splits[next].first, &p.splits[next].second}) {
    std::vector<Edge> branch = edges;
    switch (p.graph.add(*side, branch)) {
    case DifferenceGraph::AddResult::TriviallyFalse:
      continue;
    case DifferenceGraph::AddResult::NotDifference:
      unknown = true;
      continue;
    default:
      break;
    }
    SatResult r = searchSplits(p, std::move(branch), next + 1, budget);
    if (r == SatResult::Sat)
      return SatResult::Sat;
    if (r == SatResult::Unknown)
      unknown = true;
  }
  return unknown ? SatResult::Unknown : SatResult::Unsat;
}

SatResult checkInt(const Constraint &c) {
  IntProblem p = collect(c, true);
  if (p.triviallyFalse)
    return SatResult::Unsat;
  // Register split variables before sizing the graph.
  for (const auto &split : p.splits)
    for (const auto &entry : split.first.coeffs)
      p.graph.var(entry.first);
  int budget = kMaxSplitChecks;
  SatResult r = searchSplits(p, p.edges, 0, budget);
  if (r == SatResult::Sat && p.incomplete)
    return SatResult::Unknown;
  return r;
}

} // namespace

SatResult checkSat(const Constraint &c) {
  RefCongruence refs(c);
  if (!refs.consistent())
    return SatResult::Unsat;
  return checkInt(c);
}

Entailment entails(const Constraint &c, const Atom &a) {
  if (c.contains(a))
    return Entailment::Yes;
  switch (checkSat(withAtom(c, negate(a)))) {
  case SatResult::Unsat:
    return Entailment::Yes;
  case SatResult::Sat:
    return Entailment::No;
  case SatResult::Unknown:
    return Entailment::Unknown;
  }
  return Entailment::Unknown;
}

std::optional<std::int64_t> impliedValue(const Constraint &c, const Term &t) {
  Linear lin = linearize(t);
  if (lin.coeffs.empty())
    return lin.constant;
  if (lin.coeffs.size() != 1)
    return std::nullopt;
  auto [v, coeff] = *lin.coeffs.begin();
  if (coeff != 1 && coeff != -1)
    return std::nullopt;
  IntProblem p = collect(c, false);
  int n = p.graph.lookup(v);
  if (n < 0 || p.triviallyFalse)
    return std::nullopt;
  int nodes = p.graph.nodeCount();
  if (!feasible(nodes, p.edges))
    return std::nullopt;
  std::int64_t hi = shortestFrom(nodes, p.edges, 0, false)[n];
  std::int64_t negLo = shortestFrom(nodes, p.edges, 0, true)[n];
  if (hi == kInf || negLo == kInf || hi != -negLo)
    return std::nullopt;
  return coeff * hi + lin.constant;
}

//===----------------------------------------------------------------------===//
// Simplification
//===----------------------------------------------------------------------===//

Constraint simplifyConstraint(const Constraint &c, const SymbolNamer &namer) {
  if (checkSat(c) == SatResult::Unsat)
    throw Error(ErrorCode::UnsatInput, "cannot simplify an unsatisfiable constraint");

  RefCongruence refs(c);
  std::vector<Term> terms;
  for (const Atom &a : c) {
    if (a.lhs.sort() != Sort::Ref)
      continue;
    for (const Term *t : {&a.lhs, &a.rhs})
      if (std::find(terms.begin(), terms.end(), *t) == terms.end())
        terms.push_back(*t);
  }
  auto better = [&](const Term &a, const Term &b) {
    if (a.kind() == Term::Kind::Null || b.kind() == Term::Kind::Null)
      return a.kind() == Term::Kind::Null && b.kind() != Term::Kind::Null;
    std::string na = render(a, namer), nb = render(b, namer);
    if (na.size() != nb.size())
      return na.size() < nb.size();
    if (na != nb)
      return na < nb;
    return a < b;
  };
  auto representative = [&](const Term &t) {
    Term best = t;
    for (const Term &o : terms)
      if (refs.equal(t, o) && better(o, best))
        best = o;
    return best;
  };

  Constraint rewritten;
  for (const Term &t : terms) {
    Term rep = representative(t);
    if (!(rep == t))
      rewritten.add(Atom(AtomOp::Eq, t, rep));
  }
  for (const Atom &a : c) {
    if (a.lhs.sort() == Sort::Int) {
      rewritten.add(a);
    } else if (a.op == AtomOp::Neq) {
      rewritten.add(Atom(AtomOp::Neq, representative(a.lhs),
                         representative(a.rhs)));
    }
  }

  // Drop atoms entailed by the others, largest first so that among mutually
  // entailing atoms the syntactically least one survives.
  std::vector<Atom> atoms(rewritten.begin(), rewritten.end());
  for (std::size_t i = atoms.size(); i-- > 0;) {
    Constraint rest;
    for (std::size_t j = 0; j < atoms.size(); ++j)
      if (j != i)
        rest.add(atoms[j]);
    if (entails(rest, atoms[i]) == Entailment::Yes)
      atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i));
  }
  Constraint out;
  for (const Atom &a : atoms)
    out.add(a);
  return out;
}

} // namespace specminer::constraints
