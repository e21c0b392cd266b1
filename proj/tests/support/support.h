//===-- support.h - Shared test fixtures and oracles ------------*- C++ -*-===//
//
// Everything here is built on the concrete interpreter or on plain
// enumeration, never on the solver or the symbolic engine, so the tests that
// use it compare the tool against an independent semantics.
//
//===----------------------------------------------------------------------===//

#pragma once

#include "specminer/concrete.h"
#include "specminer/engine.h"
#include "specminer/inference.h"
#include "specminer/program.h"

#include <random>
#include <string>
#include <vector>

namespace specminer::testing {

std::string readData(const std::string &name);
frontend::ProgramIndex loadData(const std::string &name);
frontend::ProgramIndex loadText(const std::string &text);

/// fname(params){true} with a fresh input symbol per parameter, labelled by
/// the parameter name.
symstate::CallPattern inputCall(const frontend::ProgramIndex &index,
                                const std::string &fname, SymbolTable &symbols);

/// A well-formed doubly linked list over `struct List` with the given data
/// tokens, head first. Returns the heap and the head (NULL when empty).
struct ConcreteList {
  std::vector<engine::CObject> heap;
  engine::CValue head;
};
ConcreteList makeList(const std::vector<std::int64_t> &tokens);

/// All token sequences of length 0..maxLength over `domain` tokens.
std::vector<std::vector<std::int64_t>> allSequences(int maxLength, int domain);

/// Does some assignment over the finite domains satisfy `c`? Addresses range
/// over NULL plus `objects` distinct objects, integers over [lo, hi]. Field
/// paths are not supported.
bool bruteForceSat(const constraints::Constraint &c, int objects = 4,
                   std::int64_t lo = -8, std::int64_t hi = 8);

/// Do `a` and `b` have the same models over those domains? Both must be
/// satisfiable there; each sort is compared separately.
bool bruteForceEquivalent(const constraints::Constraint &a,
                          const constraints::Constraint &b, int objects = 4,
                          std::int64_t lo = -8, std::int64_t hi = 8);

/// A conjunction of `atoms` random atoms: equalities and disequalities over
/// `addrs` and NULL, and unit-coefficient comparisons over `ints`.
constraints::Constraint randomConjunction(std::mt19937 &rng,
                                          const std::vector<SymId> &addrs,
                                          const std::vector<SymId> &ints,
                                          int atoms);

/// One concrete input for an axiom check.
struct ConcreteInput {
  std::vector<engine::CObject> heap;
  std::vector<engine::CValue> args;
};

struct SoundnessReport {
  int axiomsChecked = 0;
  int inputsMatchingPre = 0;
  int violations = 0;
  std::vector<std::string> details; ///< first few violations
};

/// For every non-approx axiom, runs the modifier on each input satisfying
/// its pre-set and checks every post equation. An observer that fails
/// concretely makes its equation false.
SoundnessReport checkSoundness(const frontend::ProgramIndex &index,
                               const inference::SpecSet &spec,
                               const std::vector<ConcreteInput> &inputs);

/// Lists of length <= maxLength with `domain` data tokens, combined with each
/// token for every void* parameter and each of 0..2 for int parameters.
std::vector<ConcreteInput> listInputs(const inference::Signature &sig,
                                      int maxLength, int domain);

} // namespace specminer::testing
