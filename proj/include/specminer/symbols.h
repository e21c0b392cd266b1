//===-- symbols.h - Fresh symbol source -------------------------*- C++ -*-===//
//
// Every symbolic address, integer and data token issued during one inference
// run comes from a single SymbolTable, so ids never collide between the
// modifier run and the observer runs seeded from its patterns.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace specminer {

struct SymId {
  std::uint32_t value = 0;
  auto operator<=>(const SymId &) const = default;
};

enum class SymKind {
  Address, ///< heap object address
  Int,     ///< symbolic integer
  Data,    ///< uninterpreted void* datum
  Cell,    ///< variable cell, the target of an env binding
};

struct SymbolInfo {
  SymKind kind;
  std::string label; ///< unique within the table
  /// Access path from an input root for input-derived symbols, e.g.
  /// {"list", "next"}. Empty for allocations and cells.
  std::vector<std::string> path;
  bool input = false;
};

class SymbolTable {
public:
  SymId fresh(SymKind kind, const std::string &base,
              std::vector<std::string> path = {}, bool input = false);

  const SymbolInfo &info(SymId id) const;
  const std::string &label(SymId id) const { return info(id).label; }
  std::size_t size() const { return symbols_.size(); }

  /// Prefix applied to labels of non-input symbols.
  void setPrefix(std::string prefix) { prefix_ = std::move(prefix); }

private:
  std::vector<SymbolInfo> symbols_;
  std::map<std::string, int> used_;
  std::string prefix_;
};

} // namespace specminer
