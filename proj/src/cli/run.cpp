//===-- run.cpp - specminer command-line driver ---------------------------===//

#include "specminer/cli.h"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace specminer::cli {

namespace {

constexpr const char *kSynopsis =
    "usage: specminer -f <modifier> [--unroll N] [--format text|json]\n"
    "                 [--lazy-aliasing] [--dump-patterns] [--observers a,b]\n"
    "                 [--seed-label S] [--max-patterns N] [--max-steps N]\n"
    "                 [--timing] <file.c | ->\n";

bool readSource(const std::string &path, frontend::SourceProgram &src) {
  std::ostringstream text;
  if (path == "-") {
    text << std::cin.rdbuf();
    src = {text.str(), "<stdin>"};
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return false;
  text << in.rdbuf();
  src = {text.str(), path};
  return true;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CliConfig cfg;
  if (const char *env = std::getenv("SPECMINER_MAX_PATTERNS")) {
    char *end = nullptr;
    unsigned long long n = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || n == 0) {
      err << "specminer: SPECMINER_MAX_PATTERNS must be a positive integer\n"
          << kSynopsis;
      return exit_code::usage;
    }
    cfg.maxPatterns = static_cast<std::size_t>(n);
  }

  CLI::App app{"Infer pre/post axioms of a KernelC modifier from its observers",
               "specminer"};
  std::string format = "text";
  std::vector<std::string> observers;
  app.add_option("-f,--function", cfg.modifierName, "modifier to specify")
      ->required();
  app.add_option("--unroll", cfg.unrollBound, "loop and recursion unroll bound")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--lazy-aliasing", cfg.lazyAliasing,
               "let lazily initialized pointers alias existing objects");
  app.add_flag("--dump-patterns", cfg.dumpPatterns,
               "print every leaf of the modifier run to stderr");
  app.add_option("--observers", observers, "restrict the observer universe")
      ->delimiter(',');
  app.add_option("--seed-label", cfg.seedLabel,
                 "prefix for the names of allocated symbols");
  app.add_option("--max-patterns", cfg.maxPatterns, "pattern budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-steps", cfg.maxSteps, "per-path step budget")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timing", cfg.timing, "report wall time");
  app.add_option("file", cfg.inputPath, "KernelC source, or - for stdin")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError &e) {
    err << "specminer: " << e.what() << "\n" << kSynopsis;
    return exit_code::usage;
  }
  cfg.format = format == "json" ? Format::Json : Format::Text;
  if (app.count("--observers"))
    cfg.observersOverride = observers;

  frontend::SourceProgram src;
  if (!readSource(cfg.inputPath, src)) {
    err << "specminer: cannot read '" << cfg.inputPath << "'\n";
    return exit_code::noInput;
  }

  auto start = std::chrono::steady_clock::now();
  OutputDocument doc;
  try {
    frontend::ProgramIndex index = frontend::load(src);
    inference::InferOptions options;
    options.limits = {cfg.unrollBound, cfg.maxPatterns, cfg.maxSteps,
                      cfg.lazyAliasing};
    options.observers = cfg.observersOverride;
    options.seedLabel = cfg.seedLabel;
    if (cfg.dumpPatterns)
      options.patternSink = [&err](int id, const symstate::Pattern &p,
                                   const SymbolTable &symbols) {
        err << "pattern " << id << " ("
            << (p.status == symstate::Status::Final ? "final" : "error")
            << ")\n"
            << symstate::render(p, symbols) << "\n";
      };
    doc.spec = inference::inferSpec(index, cfg.modifierName, options);
    doc.diagnostics = index.warnings;
    doc.diagnostics.insert(doc.diagnostics.end(), doc.spec.diagnostics.begin(),
                           doc.spec.diagnostics.end());
  } catch (const Error &e) {
    err << src.origin << ": " << e.what() << "\n";
    bool input = e.isFrontendError() || e.code() == ErrorCode::UnknownFunction ||
                 e.code() == ErrorCode::NotAModifier;
    return input ? exit_code::inputError : exit_code::internal;
  }
  if (cfg.timing)
    doc.wallTimeMs = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();

  for (const std::string &d : doc.diagnostics)
    err << "specminer: warning: " << d << "\n";
  out << (cfg.format == Format::Json ? emitJson(doc) : emitText(doc));
  return doc.spec.budgetExceeded ? exit_code::budgetExceeded : exit_code::ok;
}

} // namespace specminer::cli
