//===-- symbols.cpp - Fresh symbol source ---------------------------------===//

#include "specminer/symbols.h"

#include <stdexcept>

namespace specminer {

SymId SymbolTable::fresh(SymKind kind, const std::string &base,
                         std::vector<std::string> path, bool input) {
  std::string stem = base;
  if (kind == SymKind::Cell)
    stem = "&" + stem;
  else if (!input && !prefix_.empty())
    stem = prefix_ + stem;
  // Cells and values live in different namespaces of the rendering, but the
  // label must be unique within the table.
  int &uses = used_[stem];
  ++uses;
  std::string label = uses == 1 ? stem : stem + "#" + std::to_string(uses);
  while (uses > 1 && used_.count(label)) {
    ++uses;
    label = stem + "#" + std::to_string(uses);
  }
  if (label != stem)
    used_[label] = 1;
  SymId id{static_cast<std::uint32_t>(symbols_.size())};
  symbols_.push_back({kind, label, std::move(path), input});
  return id;
}

const SymbolInfo &SymbolTable::info(SymId id) const {
  if (id.value >= symbols_.size())
    throw std::out_of_range("unknown symbol id");
  return symbols_[id.value];
}

} // namespace specminer
