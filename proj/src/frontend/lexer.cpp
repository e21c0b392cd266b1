//===-- lexer.cpp - KernelC tokenizer -------------------------------------===//

#include "specminer/lexer.h"

#include <cctype>
#include <map>

namespace specminer::frontend {

const char *describe(Tok kind) {
  switch (kind) {
  case Tok::Ident:
    return "identifier";
  case Tok::IntLit:
    return "integer literal";
  case Tok::KwStruct:
    return "'struct'";
  case Tok::KwInt:
    return "'int'";
  case Tok::KwVoid:
    return "'void'";
  case Tok::KwIf:
    return "'if'";
  case Tok::KwElse:
    return "'else'";
  case Tok::KwWhile:
    return "'while'";
  case Tok::KwReturn:
    return "'return'";
  case Tok::KwNull:
    return "'NULL'";
  case Tok::KwMalloc:
    return "'malloc'";
  case Tok::KwSizeof:
    return "'sizeof'";
  case Tok::LBrace:
    return "'{'";
  case Tok::RBrace:
    return "'}'";
  case Tok::LParen:
    return "'('";
  case Tok::RParen:
    return "')'";
  case Tok::Semi:
    return "';'";
  case Tok::Comma:
    return "','";
  case Tok::Star:
    return "'*'";
  case Tok::Arrow:
    return "'->'";
  case Tok::Assign:
    return "'='";
  case Tok::EqEq:
    return "'=='";
  case Tok::Neq:
    return "'!='";
  case Tok::Lt:
    return "'<'";
  case Tok::Le:
    return "'<='";
  case Tok::Gt:
    return "'>'";
  case Tok::Ge:
    return "'>='";
  case Tok::Plus:
    return "'+'";
  case Tok::Minus:
    return "'-'";
  case Tok::AndAnd:
    return "'&&'";
  case Tok::OrOr:
    return "'||'";
  case Tok::Bang:
    return "'!'";
  }
  return "token";
}

namespace {

const std::map<std::string, Tok> &keywords() {
  static const std::map<std::string, Tok> table = {
      {"struct", Tok::KwStruct}, {"int", Tok::KwInt},
      {"void", Tok::KwVoid},     {"if", Tok::KwIf},
      {"else", Tok::KwElse},     {"while", Tok::KwWhile},
      {"return", Tok::KwReturn}, {"NULL", Tok::KwNull},
      {"malloc", Tok::KwMalloc}, {"sizeof", Tok::KwSizeof},
  };
  return table;
}

class Lexer {
public:
  explicit Lexer(const std::string &text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipTrivia();
      if (at_ >= text_.size())
        return out;
      out.push_back(next());
    }
  }

private:
  char peek(std::size_t ahead = 0) const {
    return at_ + ahead < text_.size() ? text_[at_ + ahead] : '\0';
  }

  void advance() {
    if (text_[at_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++at_;
  }

  void skipTrivia() {
    while (at_ < text_.size()) {
      char c = peek();
      if (c == '\n') {
        advance();
        lineStart_ = true;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' && lineStart_) {
        while (at_ < text_.size() && peek() != '\n')
          advance();
      } else if (c == '/' && peek(1) == '/') {
        while (at_ < text_.size() && peek() != '\n')
          advance();
      } else if (c == '/' && peek(1) == '*') {
        SourcePos start{line_, col_};
        advance();
        advance();
        while (at_ < text_.size() && !(peek() == '*' && peek(1) == '/'))
          advance();
        if (at_ >= text_.size())
          throw Error(ErrorCode::IllegalCharacter, "unterminated comment",
                      start);
        advance();
        advance();
        lineStart_ = false;
      } else {
        return;
      }
    }
  }

  Token next() {
    lineStart_ = false;
    SourcePos pos{line_, col_};
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        word += peek();
        advance();
      }
      auto kw = keywords().find(word);
      return {kw == keywords().end() ? Tok::Ident : kw->second, word, pos};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += peek();
        advance();
      }
      return {Tok::IntLit, digits, pos};
    }
    auto two = [&](Tok kind, const char *text) {
      advance();
      advance();
      return Token{kind, text, pos};
    };
    auto one = [&](Tok kind) {
      std::string text(1, c);
      advance();
      return Token{kind, text, pos};
    };
    char d = peek(1);
    switch (c) {
    case '-':
      return d == '>' ? two(Tok::Arrow, "->") : one(Tok::Minus);
    case '=':
      return d == '=' ? two(Tok::EqEq, "==") : one(Tok::Assign);
    case '!':
      return d == '=' ? two(Tok::Neq, "!=") : one(Tok::Bang);
    case '<':
      return d == '=' ? two(Tok::Le, "<=") : one(Tok::Lt);
    case '>':
      return d == '=' ? two(Tok::Ge, ">=") : one(Tok::Gt);
    case '&':
      if (d == '&')
        return two(Tok::AndAnd, "&&");
      break;
    case '|':
      if (d == '|')
        return two(Tok::OrOr, "||");
      break;
    case '{':
      return one(Tok::LBrace);
    case '}':
      return one(Tok::RBrace);
    case '(':
      return one(Tok::LParen);
    case ')':
      return one(Tok::RParen);
    case ';':
      return one(Tok::Semi);
    case ',':
      return one(Tok::Comma);
    case '*':
      return one(Tok::Star);
    case '+':
      return one(Tok::Plus);
    default:
      break;
    }
    throw Error(ErrorCode::IllegalCharacter,
                std::string("unexpected character '") + c + "'", pos);
  }

  const std::string &text_;
  std::size_t at_ = 0;
  int line_ = 1;
  int col_ = 1;
  bool lineStart_ = true;
};

} // namespace

std::vector<Token> tokenize(const SourceProgram &src) {
  return Lexer(src.text).run();
}

} // namespace specminer::frontend
