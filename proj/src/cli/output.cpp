//===-- output.cpp - Text and JSON renderings of a specification ----------===//

#include "specminer/cli.h"

#include "json.hpp"

#include <sstream>
#include <stdexcept>

namespace specminer::cli {

using inference::Axiom;
using inference::Equation;
using inference::ResultKind;
using inference::ResultValue;
using inference::Signature;
using Json = nlohmann::ordered_json;

namespace {

void emitSide(std::ostringstream &os, const std::set<Equation> &side,
              const Signature &sig, bool post) {
  if (side.empty()) {
    os << "(true)";
    return;
  }
  os << "(";
  bool first = true;
  for (const Equation &e : side) {
    os << (first ? "" : " /\\\n ") << inference::render(e, sig, post);
    first = false;
  }
  os << ")";
}

std::string plural(std::size_t n, const char *word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

} // namespace

std::string emitText(const OutputDocument &doc) {
  const inference::SpecSet &spec = doc.spec;
  std::ostringstream os;
  os << "% specification of " << spec.signature.modifier << "(";
  for (std::size_t i = 0; i < spec.signature.params.size(); ++i)
    os << (i ? ", " : "") << spec.signature.params[i];
  os << "), unroll bound " << spec.limits.unrollBound << "\n";
  if (spec.axioms.empty())
    os << "\nno axioms inferable at this bound\n";
  for (const Axiom &a : spec.axioms) {
    os << "\n";
    emitSide(os, a.pre, spec.signature, false);
    os << "\n  =>\n";
    emitSide(os, a.post, spec.signature, true);
    if (a.approx)
      os << " [approx]";
    os << "\n";
  }
  os << "\n% " << plural(spec.finalPatterns, "final pattern") << ", "
     << plural(spec.errorPatterns, "error pattern") << ", "
     << plural(static_cast<std::size_t>(spec.truncatedPaths), "truncated path");
  if (spec.budgetExceeded)
    os << ", budget exceeded (partial result)";
  os << "\n";
  if (doc.wallTimeMs)
    os << "% wall time " << *doc.wallTimeMs << " ms\n";
  return os.str();
}

namespace {

std::string argName(const Signature &sig, std::size_t i, bool post) {
  std::string n = sig.params.at(i);
  return post && sig.root && *sig.root == i ? n + "'" : n;
}

std::size_t argIndex(const Signature &sig, std::string name) {
  if (!name.empty() && name.back() == '\'')
    name.pop_back();
  for (std::size_t i = 0; i < sig.params.size(); ++i)
    if (sig.params[i] == name)
      return i;
  throw std::runtime_error("unknown parameter '" + name + "'");
}

Json valueJson(const ResultValue &v, const Signature &sig, bool post) {
  Json j;
  j["kind"] = inference::name(v.kind);
  switch (v.kind) {
  case ResultKind::Int:
    j["value"] = v.number;
    break;
  case ResultKind::Null:
  case ResultKind::Undef:
    j["value"] = nullptr;
    break;
  case ResultKind::Arg:
    j["value"] = argName(sig, v.arg, false);
    break;
  case ResultKind::Root:
    j["value"] = argName(sig, *sig.root, post);
    break;
  case ResultKind::Path:
    j["value"] = inference::renderValue(v, sig, post);
    j["arg"] = argName(sig, v.arg, false);
    j["fields"] = v.fields;
    break;
  case ResultKind::Fresh:
  case ResultKind::Literal:
    j["value"] = v.text;
    break;
  }
  j["sort"] = v.integer ? "int" : "ref";
  return j;
}

ResultKind kindFromName(const std::string &s) {
  for (ResultKind k : {ResultKind::Int, ResultKind::Null, ResultKind::Arg,
                       ResultKind::Root, ResultKind::Path, ResultKind::Fresh,
                       ResultKind::Literal, ResultKind::Undef})
    if (s == inference::name(k))
      return k;
  throw std::runtime_error("unknown value kind '" + s + "'");
}

ResultValue valueFromJson(const Json &j, const Signature &sig) {
  ResultValue v;
  v.kind = kindFromName(j.at("kind").get<std::string>());
  v.integer = j.at("sort").get<std::string>() == "int";
  switch (v.kind) {
  case ResultKind::Int:
    v.number = j.at("value").get<std::int64_t>();
    break;
  case ResultKind::Arg:
    v.arg = argIndex(sig, j.at("value").get<std::string>());
    break;
  case ResultKind::Path:
    v.arg = argIndex(sig, j.at("arg").get<std::string>());
    v.fields = j.at("fields").get<std::vector<std::string>>();
    break;
  case ResultKind::Fresh:
  case ResultKind::Literal:
    v.text = j.at("value").get<std::string>();
    break;
  default:
    break;
  }
  return v;
}

Json equationJson(const Equation &e, const Signature &sig, bool post) {
  Json j;
  if (e.isRet()) {
    j["lhs"] = "ret";
  } else {
    Json args = Json::array();
    for (std::size_t a : e.call->args)
      args.push_back(argName(sig, a, post));
    j["lhs"] = {{"observer", e.call->observer}, {"args", args}};
  }
  j["rhs"] = valueJson(e.rhs, sig, post);
  j["text"] = inference::render(e, sig, post);
  return j;
}

Equation equationFromJson(const Json &j, const Signature &sig) {
  Equation e;
  const Json &lhs = j.at("lhs");
  if (!(lhs.is_string() && lhs.get<std::string>() == "ret")) {
    inference::ObserverCall call{lhs.at("observer").get<std::string>(), {}};
    for (const Json &a : lhs.at("args"))
      call.args.push_back(argIndex(sig, a.get<std::string>()));
    e.call = std::move(call);
  }
  e.rhs = valueFromJson(j.at("rhs"), sig);
  return e;
}

} // namespace

std::string emitJson(const OutputDocument &doc) {
  const inference::SpecSet &spec = doc.spec;
  const Signature &sig = spec.signature;
  Json root;
  root["modifier"] = sig.modifier;
  Json params = Json::array();
  for (std::size_t i = 0; i < sig.params.size(); ++i)
    params.push_back({{"name", sig.params[i]}, {"type", sig.paramTypes[i].str()}});
  root["params"] = params;
  root["root"] = sig.root ? Json(sig.params[*sig.root]) : Json(nullptr);
  root["limits"] = {{"unrollBound", spec.limits.unrollBound},
                    {"maxPatterns", spec.limits.maxPatterns},
                    {"maxSteps", spec.limits.maxSteps},
                    {"lazyAliasing", spec.limits.lazyAliasing}};
  Json axioms = Json::array();
  for (const Axiom &a : spec.axioms) {
    Json pre = Json::array(), post = Json::array();
    for (const Equation &e : a.pre)
      pre.push_back(equationJson(e, sig, false));
    for (const Equation &e : a.post)
      post.push_back(equationJson(e, sig, true));
    const Equation *ret = a.ret();
    axioms.push_back({{"pre", pre},
                      {"post", post},
                      {"ret", ret ? valueJson(ret->rhs, sig, true) : Json(nullptr)},
                      {"approx", a.approx},
                      {"provenance", a.provenance}});
  }
  root["axioms"] = axioms;
  Json patterns = Json::array();
  for (const inference::PatternSummary &p : spec.patterns)
    patterns.push_back({{"id", p.id},
                        {"status", p.status},
                        {"error", p.error.empty() ? Json(nullptr) : Json(p.error)}});
  root["patterns"] = patterns;
  root["stats"] = {{"finalPatterns", spec.finalPatterns},
                   {"errorPatterns", spec.errorPatterns},
                   {"truncatedPaths", spec.truncatedPaths},
                   {"budgetExceeded", spec.budgetExceeded}};
  if (doc.wallTimeMs)
    root["stats"]["wallTimeMs"] = *doc.wallTimeMs;
  root["diagnostics"] = doc.diagnostics;
  return root.dump(2) + "\n";
}

OutputDocument parseJson(const std::string &text) {
  OutputDocument doc;
  try {
    Json root = Json::parse(text);
    inference::SpecSet &spec = doc.spec;
    Signature &sig = spec.signature;
    sig.modifier = root.at("modifier").get<std::string>();
    for (const Json &p : root.at("params")) {
      sig.params.push_back(p.at("name").get<std::string>());
      std::string t = p.at("type").get<std::string>();
      if (t == "int")
        sig.paramTypes.push_back(CType::intType());
      else if (t == "void*")
        sig.paramTypes.push_back(CType::voidPtr());
      else if (t.rfind("struct ", 0) == 0 && t.back() == '*')
        sig.paramTypes.push_back(CType::structPtr(t.substr(7, t.size() - 8)));
      else
        throw std::runtime_error("unknown type '" + t + "'");
    }
    if (!root.at("root").is_null())
      sig.root = argIndex(sig, root.at("root").get<std::string>());
    const Json &limits = root.at("limits");
    spec.limits.unrollBound = limits.at("unrollBound").get<int>();
    spec.limits.maxPatterns = limits.at("maxPatterns").get<std::size_t>();
    spec.limits.maxSteps = limits.at("maxSteps").get<long>();
    spec.limits.lazyAliasing = limits.at("lazyAliasing").get<bool>();
    for (const Json &a : root.at("axioms")) {
      Axiom axiom;
      for (const Json &e : a.at("pre"))
        axiom.pre.insert(equationFromJson(e, sig));
      for (const Json &e : a.at("post"))
        axiom.post.insert(equationFromJson(e, sig));
      axiom.approx = a.at("approx").get<bool>();
      axiom.provenance = a.at("provenance").get<std::set<int>>();
      spec.axioms.push_back(std::move(axiom));
    }
    for (const Json &p : root.at("patterns"))
      spec.patterns.push_back(
          {p.at("id").get<int>(), p.at("status").get<std::string>(),
           p.at("error").is_null() ? "" : p.at("error").get<std::string>()});
    const Json &stats = root.at("stats");
    spec.finalPatterns = stats.at("finalPatterns").get<std::size_t>();
    spec.errorPatterns = stats.at("errorPatterns").get<std::size_t>();
    spec.truncatedPaths = stats.at("truncatedPaths").get<int>();
    spec.budgetExceeded = stats.at("budgetExceeded").get<bool>();
    if (stats.contains("wallTimeMs"))
      doc.wallTimeMs = stats.at("wallTimeMs").get<double>();
    doc.diagnostics = root.at("diagnostics").get<std::vector<std::string>>();
    spec.diagnostics = doc.diagnostics;
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(std::string("malformed specification JSON: ") +
                             e.what());
  }
  return doc;
}

} // namespace specminer::cli
