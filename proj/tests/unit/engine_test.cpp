//===-- engine_test.cpp - Symbolic execution ------------------------------===//

#include "doctest.h"
#include "support.h"

#include "specminer/solver.h"

using namespace specminer;
using namespace specminer::engine;
using specminer::testing::inputCall;
using specminer::testing::loadData;
using specminer::testing::loadText;

namespace {

struct Run {
  SymbolTable symbols;
  SeResult result;
};

Run run(const frontend::ProgramIndex &idx, const std::string &fn, Limits lim = {},
        ForkListener listener = {}) {
  Run r;
  r.result = se(idx, inputCall(idx, fn, r.symbols), lim, r.symbols, listener);
  return r;
}

std::string pc(const Pattern &p, const SymbolTable &symbols) {
  return constraints::render(p.pathCondition, symstate::namerFor(symbols));
}

std::string ret(const Pattern &p, const SymbolTable &symbols) {
  return symstate::render(symstate::extractReturn(p), symbols);
}

std::vector<const Pattern *> finals(const SeResult &r) {
  std::vector<const Pattern *> out;
  for (const Pattern &p : r.leaves)
    if (p.status == symstate::Status::Final)
      out.push_back(&p);
  return out;
}

std::size_t objectCount(const symstate::Heap &h) {
  std::size_t n = 0;
  for (const auto &[id, b] : h.bindings())
    n += std::holds_alternative<symstate::HeapObject>(b);
  return n;
}

} // namespace

TEST_CASE("branch example explores both branches") {
  auto idx = loadData("branch.c");
  Run r = run(idx, "f");
  REQUIRE(r.result.leaves.size() == 2);
  CHECK(r.result.complete());
  CHECK(ret(r.result.leaves[0], r.symbols) == "tv(int, 1)");
  CHECK(pc(r.result.leaves[0], r.symbols) == "?x > ?y");
  CHECK(ret(r.result.leaves[1], r.symbols) == "tv(int, 0)");
  CHECK(pc(r.result.leaves[1], r.symbols) == "?x <= ?y");
}

TEST_CASE("append has N+2 final patterns at unroll bound N") {
  auto idx = loadData("dll.c");
  for (int n = 1; n <= 3; ++n) {
    Run r = run(idx, "append", {n, 4096, 100000, false});
    CHECK(r.result.finalCount() == static_cast<std::size_t>(n + 2));
    CHECK(r.result.errorCount() == 0);
    CHECK(r.result.truncatedPaths == 1);
  }
}

TEST_CASE("length on the one-node pattern of append returns 2") {
  auto idx = loadData("dll.c");
  Run r = run(idx, "append");
  const Pattern *e = nullptr;
  for (const Pattern *p : finals(r.result))
    if (objectCount(p->inputHeap) == 1)
      e = p;
  REQUIRE(e);
  auto cond = constraints::render(e->condition(), symstate::namerFor(r.symbols));
  CHECK(cond.find("list != NULL") != std::string::npos);
  symstate::CallPattern cp{"length", {symstate::extractReturn(*e)}, e->condition(),
                           e->heap};
  SeResult len = se(idx, cp, {}, r.symbols);
  REQUIRE(len.leaves.size() == 1);
  CHECK(len.complete());
  CHECK(ret(len.leaves[0], r.symbols) == "tv(int, 2)");
}

TEST_CASE("symbolic lengths agree with concrete append") {
  auto idx = loadData("dll.c");
  Run r = run(idx, "append");
  for (const Pattern *p : finals(r.result)) {
    std::size_t inputs = objectCount(p->inputHeap);
    symstate::CallPattern cp{"length", {symstate::extractReturn(*p)},
                             p->condition(), p->heap};
    SeResult len = se(idx, cp, {}, r.symbols);
    REQUIRE(len.leaves.size() == 1);
    auto list = testing::makeList(std::vector<std::int64_t>(inputs, 0));
    ConcreteResult c1 = concreteRun(idx, "append", {list.heap, {}, {}},
                                    {list.head, CValue::token(1)});
    REQUIRE(c1.status == ConcreteStatus::Ok);
    ConcreteResult c2 =
        concreteRun(idx, "length", {c1.state.heap, {}, {}}, {c1.state.returnValue});
    CHECK(ret(len.leaves[0], r.symbols) ==
          "tv(int, " + engine::render(c2.state.returnValue) + ")");
  }
}

TEST_CASE("first field access materializes the input object") {
  auto idx = loadData("dll.c");
  Run r = run(idx, "append");
  // The loop-exit pattern on a one-node list read list->next once.
  std::string heap;
  for (const Pattern *p : finals(r.result))
    if (objectCount(p->inputHeap) == 1)
      heap = symstate::render(p->inputHeap, r.symbols);
  CHECK(heap.find("list.next") != std::string::npos);
  CHECK(heap.find("undef") != std::string::npos);
}

TEST_CASE("leaves are satisfiable, deterministic and grow the heap") {
  auto idx = loadData("dll.c");
  for (const std::string &fn : {"append", "length", "reverse", "find", "init", "last"}) {
    Run a = run(idx, fn), b = run(idx, fn);
    REQUIRE(a.result.leaves.size() == b.result.leaves.size());
    for (std::size_t i = 0; i < a.result.leaves.size(); ++i) {
      const Pattern &p = a.result.leaves[i];
      CHECK(symstate::render(p, a.symbols) ==
            symstate::render(b.result.leaves[i], b.symbols));
      CHECK(constraints::checkSat(p.condition()) != constraints::SatResult::Unsat);
      // Materialized input objects are never lost.
      for (const auto &[id, binding] : p.inputHeap.bindings())
        if (std::holds_alternative<symstate::HeapObject>(binding))
          CHECK(p.heap.object(id) != nullptr);
    }
  }
}

TEST_CASE("guard splits are disjoint") {
  auto idx = loadData("dll.c");
  int splits = 0;
  for (const std::string &fn : {"append", "reverse", "init", "find"})
    run(idx, fn, {2, 4096, 100000, false},
        [&splits](const constraints::Constraint &t, const constraints::Constraint &f) {
          ++splits;
          CHECK(constraints::checkSat(constraints::conjoin(t, f)) ==
                constraints::SatResult::Unsat);
        });
  CHECK(splits > 0);
}

TEST_CASE("an entailed guard does not split") {
  auto idx = loadText("int f(int x) { if (x > 0) { if (x > 0) return 1; else return 2; } "
                      "return 0; }");
  Run r = run(idx, "f");
  REQUIRE(r.result.leaves.size() == 2);
  CHECK(ret(r.result.leaves[0], r.symbols) == "tv(int, 1)");
  CHECK(ret(r.result.leaves[1], r.symbols) == "tv(int, 0)");
}

TEST_CASE("loops beyond the bound are cut") {
  auto idx = loadText("int f(int n) { while (n > 0) n = n - 1; return n; }");
  Run one = run(idx, "f");
  CHECK(one.result.finalCount() == 2);
  CHECK(one.result.truncatedPaths == 1);
  CHECK_FALSE(one.result.complete());
  Run two = run(idx, "f", {2, 4096, 100000, false});
  CHECK(two.result.finalCount() == 3);
}

TEST_CASE("recursion counts against the bound") {
  auto idx = loadText("struct N { struct N* next; };\n"
                      "int len(struct N* l) { if (l == NULL) return 0; "
                      "return 1 + len(l->next); }");
  Run one = run(idx, "len");
  Run two = run(idx, "len", {2, 4096, 100000, false});
  CHECK(one.result.truncatedPaths == 1);
  CHECK(two.result.finalCount() == one.result.finalCount() + 1);
  std::set<std::string> values;
  for (const Pattern *p : finals(two.result))
    values.insert(ret(*p, two.symbols));
  CHECK(values.count("tv(int, 0)") == 1);
}

TEST_CASE("null dereference is an error leaf") {
  auto idx = loadText("struct S { int a; };\nint g(struct S* s) { return s->a; }");
  Run r = run(idx, "g");
  CHECK(r.result.finalCount() == 1);
  REQUIRE(r.result.errorCount() == 1);
  for (const Pattern &p : r.result.leaves)
    if (p.status == symstate::Status::Error)
      CHECK(p.error == symstate::ErrorKind::NullDeref);
  CHECK_THROWS_AS(symstate::extractReturn(r.result.leaves[0].status ==
                                                  symstate::Status::Error
                                              ? r.result.leaves[0]
                                              : r.result.leaves[1]),
                  Error);
}

TEST_CASE("lazy aliasing adds a successor per compatible object") {
  auto idx = loadText("struct S { int v; };\n"
                      "int f(struct S* a, struct S* b) { a->v = 1; b->v = 2; "
                      "return a->v; }");
  Run plain = run(idx, "f");
  Run alias = run(idx, "f", {1, 4096, 100000, true});
  CHECK(plain.result.finalCount() == 1);
  CHECK(alias.result.finalCount() == 2);
  std::set<std::string> values;
  for (const Pattern *p : finals(alias.result))
    values.insert(ret(*p, alias.symbols));
  CHECK(values == std::set<std::string>{"tv(int, 1)", "tv(int, 2)"});
}

TEST_CASE("budgets stop exploration with a flag") {
  auto idx = loadData("dll.c");
  Run r = run(idx, "append", {3, 2, 100000, false});
  CHECK(r.result.patternBudgetExceeded);
  auto spin = loadText("int f() { while (1) { } return 0; }");
  Run s = run(spin, "f", {1, 4096, 1000, false});
  CHECK(s.result.finalCount() == 0);
  CHECK(s.result.stepBudgetExceeded);
}

TEST_CASE("single steps") {
  auto idx = loadText("int f() { int x; x = 5; return x; }");
  SymbolTable symbols;
  Engine eng(idx, {}, symbols);
  Pattern p = symstate::makeCallPattern(idx, inputCall(idx, "f", symbols), symbols);
  StepStats stats;
  bool assigned = false;
  for (int i = 0; i < 50 && p.status == symstate::Status::Running; ++i) {
    auto next = eng.step(p, stats);
    REQUIRE(next.size() == 1);
    p = next[0];
    if (!assigned && !p.values.empty() &&
        symstate::render(p.values.back(), symbols) == "tv(int, 5)" &&
        symstate::render(p, symbols).find("tv(int, 5)") != std::string::npos)
      assigned = true;
  }
  CHECK(assigned);
  CHECK(p.status == symstate::Status::Final);
  CHECK(ret(p, symbols) == "tv(int, 5)");
}

TEST_CASE("call pattern checks") {
  auto idx = loadData("dll.c");
  SymbolTable symbols;
  symstate::CallPattern cp = inputCall(idx, "append", symbols);
  cp.args.pop_back();
  CHECK_THROWS_AS(symstate::makeCallPattern(idx, cp, symbols), Error);
  cp = inputCall(idx, "length", symbols);
  cp.args[0] = symstate::Value::integer(3);
  CHECK_THROWS_AS(symstate::makeCallPattern(idx, cp, symbols), Error);
}
