//===-- parser.cpp - KernelC recursive-descent parser ---------------------===//

#include "specminer/parser.h"

#include <initializer_list>

namespace specminer::frontend {

const char *spelling(BinaryOp op) {
  switch (op) {
  case BinaryOp::Eq:
    return "==";
  case BinaryOp::Neq:
    return "!=";
  case BinaryOp::Lt:
    return "<";
  case BinaryOp::Le:
    return "<=";
  case BinaryOp::Gt:
    return ">";
  case BinaryOp::Ge:
    return ">=";
  case BinaryOp::Add:
    return "+";
  case BinaryOp::Sub:
    return "-";
  }
  return "?";
}

namespace {

template <class T> ExprPtr makeExpr(T node, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->node = std::move(node);
  e->pos = pos;
  return e;
}

template <class T> StmtPtr makeStmt(T node, SourcePos pos) {
  auto s = std::make_shared<Stmt>();
  s->node = std::move(node);
  s->pos = pos;
  return s;
}

class Parser {
public:
  explicit Parser(const std::vector<Token> &tokens) : toks_(tokens) {}

  ParsedProgram program() {
    ParsedProgram out;
    while (!atEnd()) {
      if (check(Tok::KwStruct) && check(Tok::Ident, 1) && check(Tok::LBrace, 2))
        out.structs.push_back(structDecl());
      else
        out.functions.push_back(function());
    }
    return out;
  }

private:
  bool atEnd() const { return at_ >= toks_.size(); }

  bool check(Tok kind, std::size_t ahead = 0) const {
    return at_ + ahead < toks_.size() && toks_[at_ + ahead].kind == kind;
  }

  SourcePos pos() const {
    if (!atEnd())
      return toks_[at_].pos;
    return toks_.empty() ? SourcePos{1, 1} : toks_.back().pos;
  }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    std::string msg = "expected ";
    bool first = true;
    for (Tok t : expected) {
      msg += first ? "" : " or ";
      msg += describe(t);
      first = false;
    }
    msg += atEnd() ? " but reached end of input"
                   : ", found '" + toks_[at_].text + "'";
    throw Error(ErrorCode::SyntaxError, msg, pos());
  }

  const Token &expect(Tok kind) {
    if (!check(kind))
      fail({kind});
    return toks_[at_++];
  }

  bool accept(Tok kind) {
    if (!check(kind))
      return false;
    ++at_;
    return true;
  }

  bool atType() const {
    return check(Tok::KwInt) || check(Tok::KwVoid) || check(Tok::KwStruct);
  }

  CType type() {
    if (accept(Tok::KwInt))
      return CType::intType();
    if (accept(Tok::KwVoid))
      return accept(Tok::Star) ? CType::voidPtr() : CType::voidType();
    if (accept(Tok::KwStruct)) {
      std::string name = expect(Tok::Ident).text;
      expect(Tok::Star);
      return CType::structPtr(name);
    }
    fail({Tok::KwInt, Tok::KwVoid, Tok::KwStruct});
  }

  Declarator declarator() {
    SourcePos p = pos();
    CType t = type();
    return {expect(Tok::Ident).text, t, p};
  }

  StructDef structDecl() {
    StructDef def;
    def.pos = pos();
    expect(Tok::KwStruct);
    def.name = expect(Tok::Ident).text;
    expect(Tok::LBrace);
    while (!check(Tok::RBrace)) {
      def.fields.push_back(declarator());
      expect(Tok::Semi);
    }
    expect(Tok::RBrace);
    expect(Tok::Semi);
    return def;
  }

  FunctionDef function() {
    FunctionDef fn;
    fn.pos = pos();
    fn.returnType = type();
    fn.name = expect(Tok::Ident).text;
    expect(Tok::LParen);
    if (check(Tok::KwVoid) && check(Tok::RParen, 1)) {
      ++at_;
    } else if (!check(Tok::RParen)) {
      do {
        fn.params.push_back(declarator());
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen);

    SourcePos bodyPos = pos();
    expect(Tok::LBrace);
    while (atType()) {
      fn.locals.push_back(declarator());
      expect(Tok::Semi);
    }
    Block body;
    while (!check(Tok::RBrace)) {
      if (atEnd())
        fail({Tok::RBrace});
      body.stmts.push_back(statement());
    }
    expect(Tok::RBrace);
    fn.body = makeStmt(std::move(body), bodyPos);
    return fn;
  }

  StmtPtr statement() {
    SourcePos p = pos();
    if (atType())
      throw Error(ErrorCode::SyntaxError,
                  "declarations must precede statements in a function body", p);
    if (accept(Tok::LBrace)) {
      Block block;
      while (!check(Tok::RBrace)) {
        if (atEnd())
          fail({Tok::RBrace});
        block.stmts.push_back(statement());
      }
      expect(Tok::RBrace);
      return makeStmt(std::move(block), p);
    }
    if (accept(Tok::KwIf)) {
      expect(Tok::LParen);
      ExprPtr cond = expression();
      expect(Tok::RParen);
      StmtPtr then = statement();
      StmtPtr otherwise = accept(Tok::KwElse) ? statement() : nullptr;
      return makeStmt(If{cond, then, otherwise}, p);
    }
    if (accept(Tok::KwWhile)) {
      expect(Tok::LParen);
      ExprPtr cond = expression();
      expect(Tok::RParen);
      return makeStmt(While{cond, statement()}, p);
    }
    if (accept(Tok::KwReturn)) {
      ExprPtr value = check(Tok::Semi) ? nullptr : expression();
      expect(Tok::Semi);
      return makeStmt(Return{value}, p);
    }
    if (accept(Tok::Semi))
      return makeStmt(Empty{}, p);
    ExprPtr e = expression();
    expect(Tok::Semi);
    return makeStmt(ExprStmt{e}, p);
  }

  ExprPtr expression() { return assignment(); }

  ExprPtr assignment() {
    ExprPtr lhs = logicalOr();
    if (check(Tok::Assign)) {
      SourcePos p = pos();
      ++at_;
      if (!lhs->is<VarRef>() && !lhs->is<FieldAccess>())
        throw Error(ErrorCode::SyntaxError,
                    "left side of '=' must be a variable or field access", p);
      ExprPtr rhs = assignment();
      return makeExpr(Assign{lhs, rhs}, lhs->pos);
    }
    return lhs;
  }

  ExprPtr logicalOr() {
    ExprPtr lhs = logicalAnd();
    while (check(Tok::OrOr)) {
      ++at_;
      lhs = makeExpr(Logical{LogicalOp::Or, lhs, logicalAnd()}, lhs->pos);
    }
    return lhs;
  }

  ExprPtr logicalAnd() {
    ExprPtr lhs = equality();
    while (check(Tok::AndAnd)) {
      ++at_;
      lhs = makeExpr(Logical{LogicalOp::And, lhs, equality()}, lhs->pos);
    }
    return lhs;
  }

  ExprPtr equality() {
    ExprPtr lhs = relational();
    while (check(Tok::EqEq) || check(Tok::Neq)) {
      BinaryOp op = toks_[at_++].kind == Tok::EqEq ? BinaryOp::Eq : BinaryOp::Neq;
      lhs = makeExpr(Binary{op, lhs, relational()}, lhs->pos);
    }
    return lhs;
  }

  ExprPtr relational() {
    ExprPtr lhs = additive();
    while (true) {
      BinaryOp op;
      if (check(Tok::Lt))
        op = BinaryOp::Lt;
      else if (check(Tok::Le))
        op = BinaryOp::Le;
      else if (check(Tok::Gt))
        op = BinaryOp::Gt;
      else if (check(Tok::Ge))
        op = BinaryOp::Ge;
      else
        return lhs;
      ++at_;
      lhs = makeExpr(Binary{op, lhs, additive()}, lhs->pos);
    }
  }

  ExprPtr additive() {
    ExprPtr lhs = unary();
    while (check(Tok::Plus) || check(Tok::Minus)) {
      BinaryOp op = toks_[at_++].kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      lhs = makeExpr(Binary{op, lhs, unary()}, lhs->pos);
    }
    return lhs;
  }

  ExprPtr unary() {
    SourcePos p = pos();
    if (accept(Tok::Bang))
      return makeExpr(Not{unary()}, p);
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    while (accept(Tok::Arrow))
      e = makeExpr(FieldAccess{e, expect(Tok::Ident).text}, e->pos);
    return e;
  }

  ExprPtr mallocCall(std::optional<CType> cast, SourcePos p) {
    expect(Tok::KwMalloc);
    expect(Tok::LParen);
    expect(Tok::KwSizeof);
    expect(Tok::LParen);
    expect(Tok::KwStruct);
    std::string name = expect(Tok::Ident).text;
    expect(Tok::RParen);
    expect(Tok::RParen);
    return makeExpr(Malloc{name, cast}, p);
  }

  ExprPtr primary() {
    SourcePos p = pos();
    if (check(Tok::IntLit))
      return makeExpr(IntLit{std::stoll(toks_[at_++].text)}, p);
    if (accept(Tok::KwNull))
      return makeExpr(NullLit{}, p);
    if (check(Tok::KwMalloc))
      return mallocCall(std::nullopt, p);
    if (check(Tok::Ident)) {
      std::string name = toks_[at_++].text;
      if (!accept(Tok::LParen))
        return makeExpr(VarRef{name}, p);
      Call call{name, {}};
      if (!check(Tok::RParen)) {
        do {
          call.args.push_back(expression());
        } while (accept(Tok::Comma));
      }
      expect(Tok::RParen);
      return makeExpr(std::move(call), p);
    }
    if (accept(Tok::LParen)) {
      if (atType()) {
        CType cast = type();
        expect(Tok::RParen);
        if (!check(Tok::KwMalloc))
          throw Error(ErrorCode::SyntaxError,
                      "casts are only supported on malloc", pos());
        return mallocCall(cast, p);
      }
      ExprPtr inner = expression();
      expect(Tok::RParen);
      return inner;
    }
    fail({Tok::Ident, Tok::IntLit, Tok::KwNull, Tok::KwMalloc, Tok::LParen,
          Tok::Bang});
  }

  const std::vector<Token> &toks_;
  std::size_t at_ = 0;
};

} // namespace

ParsedProgram parse(const std::vector<Token> &tokens) {
  return Parser(tokens).program();
}

} // namespace specminer::frontend
