//===-- frontend_test.cpp - Lexer, parser and resolver --------------------===//

#include "doctest.h"
#include "support.h"

#include "specminer/parser.h"

#include <regex>

using namespace specminer;
using namespace specminer::frontend;
using specminer::testing::loadData;
using specminer::testing::loadText;
using specminer::testing::readData;

namespace {

std::vector<Tok> kinds(const std::string &text) {
  std::vector<Tok> out;
  for (const Token &t : tokenize({text}))
    out.push_back(t.kind);
  return out;
}

ErrorCode loadError(const std::string &text) {
  try {
    loadText(text);
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error for: " << text);
  return ErrorCode::EmptySource;
}

// The body of `fname` in the raw source, from its signature to the closing
// brace at column 0.
std::string functionText(const std::string &src, const std::string &fname) {
  std::size_t at = src.find(" " + fname + "(");
  std::size_t start = src.rfind('\n', at) + 1;
  std::size_t end = src.find("\n}", at);
  return src.substr(start, end + 2 - start);
}

} // namespace

TEST_CASE("lexer: operators and keywords") {
  CHECK(kinds("a->b != NULL && !c") ==
        std::vector<Tok>{Tok::Ident, Tok::Arrow, Tok::Ident, Tok::Neq,
                         Tok::KwNull, Tok::AndAnd, Tok::Bang, Tok::Ident});
  CHECK(kinds("x<=y>=z<w>v==u=t") ==
        std::vector<Tok>{Tok::Ident, Tok::Le, Tok::Ident, Tok::Ge, Tok::Ident,
                         Tok::Lt, Tok::Ident, Tok::Gt, Tok::Ident, Tok::EqEq,
                         Tok::Ident, Tok::Assign, Tok::Ident});
  CHECK(kinds("struct int void if else while return malloc sizeof") ==
        std::vector<Tok>{Tok::KwStruct, Tok::KwInt, Tok::KwVoid, Tok::KwIf,
                         Tok::KwElse, Tok::KwWhile, Tok::KwReturn,
                         Tok::KwMalloc, Tok::KwSizeof});
}

TEST_CASE("lexer: comments and preprocessor lines are skipped") {
  CHECK(kinds("#include <stdlib.h>\n// x\n/* y\n z */ 42") ==
        std::vector<Tok>{Tok::IntLit});
}

TEST_CASE("lexer: positions") {
  auto toks = tokenize({"int\n  x;"});
  REQUIRE(toks.size() == 3);
  CHECK(toks[1].pos.line == 2);
  CHECK(toks[1].pos.column == 3);
}

TEST_CASE("lexer: illegal character") {
  CHECK_THROWS_AS(tokenize({"int x @ y"}), Error);
  try {
    tokenize({"a $"});
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::IllegalCharacter);
  }
}

TEST_CASE("lexer: struct tokens agree with a textual scan") {
  std::string src = readData("dll.c");
  for (const char *fn : {"append", "length", "reverse", "init"}) {
    std::string text = functionText(src, fn);
    std::regex word("\\bstruct\\b");
    auto expected = std::distance(
        std::sregex_iterator(text.begin(), text.end(), word), std::sregex_iterator());
    auto toks = tokenize({text});
    auto got = std::count_if(toks.begin(), toks.end(),
                             [](const Token &t) { return t.kind == Tok::KwStruct; });
    CHECK_MESSAGE(got == expected, fn);
  }
  // append: return type, parameter, two locals, the cast and sizeof.
  auto toks = tokenize({functionText(src, "append")});
  CHECK(std::count_if(toks.begin(), toks.end(), [](const Token &t) {
          return t.kind == Tok::KwStruct;
        }) == 6);
}

TEST_CASE("parser: declarations of the list corpus") {
  ParsedProgram p = parse(tokenize({readData("dll.c")}));
  REQUIRE(p.structs.size() == 1);
  CHECK(p.structs[0].name == "List");
  CHECK(p.structs[0].fields.size() == 3);
  std::vector<std::string> names;
  for (const FunctionDef &f : p.functions)
    names.push_back(f.name);
  CHECK(names == std::vector<std::string>{"append", "length", "reverse", "head",
                                          "last", "find", "init"});
  CHECK(p.functions[0].locals.size() == 2);
  CHECK(p.functions[0].params[1].type == CType::voidPtr());
}

TEST_CASE("parser: precedence and associativity") {
  auto expr = [](const std::string &e) {
    ParsedProgram p = parse(tokenize({"int f(int a, int b, int c) { return " + e + "; }"}));
    return print(*p.functions[0].body->as<Block>()->stmts[0]->as<Return>()->value);
  };
  CHECK(expr("a + b - c") == "a + b - c");
  CHECK(expr("a - (b - c)") == "a - (b - c)");
  CHECK(expr("a < b == c") == "a < b == c");
  CHECK(expr("a == (b < c)") == "a == b < c");
  CHECK(expr("(a == b) < c") == "(a == b) < c");
  CHECK(expr("a || b && c") == "a || b && c");
  CHECK(expr("(a || b) && c") == "(a || b) && c");
  CHECK(expr("a = b = c") == "a = b = c");
  CHECK(expr("!!a") == "!!a");
}

TEST_CASE("parser: print then parse keeps the shape") {
  for (const char *file : {"dll.c", "branch.c"}) {
    ParsedProgram p = parse(tokenize({readData(file)}));
    std::string once = print(p);
    ParsedProgram q = parse(tokenize({once}));
    CHECK(sameShape(p, q));
    CHECK(print(q) == once);
  }
}

TEST_CASE("parser: syntax errors name what was expected") {
  try {
    parse(tokenize({"int f() { return 1 }"}));
    FAIL("no error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(std::string(e.what()).find("expected") != std::string::npos);
  }
  CHECK(loadError("int f() { 1 = 2; return 0; }") == ErrorCode::SyntaxError);
  CHECK(loadError("int f() { return 0; int x; }") == ErrorCode::SyntaxError);
  CHECK(loadError("struct S { };") == ErrorCode::SyntaxError);
}

TEST_CASE("resolver: observers and modifiers") {
  ProgramIndex idx = loadData("dll.c");
  CHECK(idx.modifiers.size() == 7);
  CHECK(idx.observers == std::set<std::string>{"append", "find", "head", "init",
                                              "last", "length", "reverse"});
  ProgramIndex v = loadText("struct S { int a; };\n"
                            "void set(struct S* s) { s->a = 1; }\n"
                            "int get(struct S* s) { return s->a; }\n");
  CHECK(v.observers == std::set<std::string>{"get"});
  CHECK(v.modifiers == std::set<std::string>{"get", "set"});
}

TEST_CASE("resolver: void pointer conversions warn") {
  ProgramIndex idx = loadData("dll.c");
  REQUIRE(idx.warnings.size() == 1);
  CHECK(idx.warnings[0].find("implicit conversion from 'void*' to 'struct List*' in 'last'") !=
        std::string::npos);
}

TEST_CASE("resolver: errors") {
  CHECK(loadError("   \n") == ErrorCode::EmptySource);
  CHECK(loadError("int f() { return y; }") == ErrorCode::UnknownIdentifier);
  CHECK(loadError("int f() { return g(); }") == ErrorCode::UnknownIdentifier);
  CHECK(loadError("struct S { int a; };\nint f(struct S* s) { return s->b; }") ==
        ErrorCode::UnknownField);
  CHECK(loadError("int f(int x) { return x->a; }") == ErrorCode::TypeMismatch);
  CHECK(loadError("struct S { int a; };\nint f(struct S* s) { return s; }") ==
        ErrorCode::TypeMismatch);
  CHECK(loadError("int f(int x) { return 0; }\nint f(int y) { return 1; }") ==
        ErrorCode::DuplicateDefinition);
  CHECK(loadError("int f(int x, int x) { return 0; }") ==
        ErrorCode::DuplicateDefinition);
  CHECK(loadError("int f(struct T* t) { return 0; }") ==
        ErrorCode::UnknownIdentifier);
  CHECK(loadError("int g(int a) { return a; }\nint f() { return g(); }") ==
        ErrorCode::TypeMismatch);
  CHECK(loadError("void f() { return 1; }") == ErrorCode::TypeMismatch);
}

TEST_CASE("resolver: expression types") {
  ProgramIndex idx = loadData("dll.c");
  const FunctionDef &find = idx.function("find");
  const auto *loop = find.body->as<Block>()->stmts[1]->as<While>();
  REQUIRE(loop);
  CHECK(loop->cond->type == CType::intType());
  CHECK_THROWS_AS(idx.function("missing"), Error);
}
