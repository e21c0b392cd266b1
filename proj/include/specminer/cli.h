//===-- cli.h - Command-line driver and output formats ----------*- C++ -*-===//

#pragma once

#include "specminer/inference.h"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace specminer::cli {

enum class Format { Text, Json };

struct CliConfig {
  std::string inputPath; ///< "-" reads standard input
  std::string modifierName;
  int unrollBound = 1;
  Format format = Format::Text;
  bool lazyAliasing = false;
  bool dumpPatterns = false;
  std::optional<std::vector<std::string>> observersOverride;
  std::string seedLabel;
  std::size_t maxPatterns = 4096;
  long maxSteps = 100000;
  bool timing = false;
};

struct OutputDocument {
  inference::SpecSet spec;
  /// Frontend warnings followed by inference diagnostics.
  std::vector<std::string> diagnostics;
  /// Only reported when requested, so default output stays reproducible.
  std::optional<double> wallTimeMs;
};

std::string emitText(const OutputDocument &doc);
std::string emitJson(const OutputDocument &doc);
/// Inverse of emitJson. Throws std::runtime_error on malformed input.
OutputDocument parseJson(const std::string &json);

namespace exit_code {
constexpr int ok = 0;
constexpr int inputError = 2;
constexpr int budgetExceeded = 3;
constexpr int usage = 64;
constexpr int noInput = 66;
constexpr int internal = 70;
} // namespace exit_code

/// Runs the tool. Output goes to `out`, diagnostics and dumps to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace specminer::cli
