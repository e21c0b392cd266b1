//===-- printer.cpp - KernelC pretty printer and shape comparison ---------===//

#include "specminer/parser.h"

#include <sstream>

namespace specminer::frontend {

namespace {

int precedence(const Expr &e) {
  if (e.is<Assign>())
    return 1;
  if (auto *l = e.as<Logical>())
    return l->op == LogicalOp::Or ? 2 : 3;
  if (auto *b = e.as<Binary>()) {
    switch (b->op) {
    case BinaryOp::Eq:
    case BinaryOp::Neq:
      return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub:
      return 6;
    default:
      return 5;
    }
  }
  if (e.is<Not>())
    return 7;
  return 8;
}

std::string typeSpelling(const CType &t) {
  switch (t.kind) {
  case CTypeKind::StructPtr:
    return "struct " + t.structName + "*";
  case CTypeKind::VoidPtr:
    return "void*";
  default:
    return t.str();
  }
}

std::string printExpr(const Expr &e);

// Parenthesize `e` when its precedence is below `min`.
std::string operand(const Expr &e, int min) {
  std::string s = printExpr(e);
  return precedence(e) < min ? "(" + s + ")" : s;
}

std::string printExpr(const Expr &e) {
  int prec = precedence(e);
  if (auto *n = e.as<IntLit>())
    return std::to_string(n->value);
  if (e.is<NullLit>())
    return "NULL";
  if (auto *v = e.as<VarRef>())
    return v->name;
  if (auto *f = e.as<FieldAccess>())
    return operand(*f->base, 8) + "->" + f->field;
  if (auto *b = e.as<Binary>())
    return operand(*b->lhs, prec) + " " + spelling(b->op) + " " +
           operand(*b->rhs, prec + 1);
  if (auto *l = e.as<Logical>())
    return operand(*l->lhs, prec) + (l->op == LogicalOp::And ? " && " : " || ") +
           operand(*l->rhs, prec + 1);
  if (auto *n = e.as<Not>())
    return "!" + operand(*n->operand, 7);
  if (auto *c = e.as<Call>()) {
    std::string out = c->callee + "(";
    for (std::size_t i = 0; i < c->args.size(); ++i)
      out += (i ? ", " : "") + printExpr(*c->args[i]);
    return out + ")";
  }
  if (auto *m = e.as<Malloc>()) {
    std::string out =
        m->cast ? "(" + typeSpelling(*m->cast) + ") " : std::string();
    return out + "malloc(sizeof(struct " + m->structName + "))";
  }
  if (auto *a = e.as<Assign>())
    return operand(*a->target, 2) + " = " + operand(*a->value, 1);
  return "?";
}

void printStmt(std::ostringstream &os, const Stmt &s, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (auto *b = s.as<Block>()) {
    os << pad << "{\n";
    for (const StmtPtr &inner : b->stmts)
      printStmt(os, *inner, indent + 1);
    os << pad << "}\n";
  } else if (auto *e = s.as<ExprStmt>()) {
    os << pad << printExpr(*e->expr) << ";\n";
  } else if (auto *i = s.as<If>()) {
    os << pad << "if (" << printExpr(*i->cond) << ")\n";
    printStmt(os, *i->then, indent + 1);
    if (i->otherwise) {
      os << pad << "else\n";
      printStmt(os, *i->otherwise, indent + 1);
    }
  } else if (auto *w = s.as<While>()) {
    os << pad << "while (" << printExpr(*w->cond) << ")\n";
    printStmt(os, *w->body, indent + 1);
  } else if (auto *r = s.as<Return>()) {
    os << pad << "return" << (r->value ? " " + printExpr(*r->value) : "")
       << ";\n";
  } else {
    os << pad << ";\n";
  }
}

bool sameExpr(const Expr &a, const Expr &b);

bool sameExpr(const ExprPtr &a, const ExprPtr &b) {
  if (!a || !b)
    return !a && !b;
  return sameExpr(*a, *b);
}

bool sameExpr(const Expr &a, const Expr &b) {
  if (a.node.index() != b.node.index())
    return false;
  if (auto *x = a.as<IntLit>())
    return x->value == b.as<IntLit>()->value;
  if (a.is<NullLit>())
    return true;
  if (auto *x = a.as<VarRef>())
    return x->name == b.as<VarRef>()->name;
  if (auto *x = a.as<FieldAccess>()) {
    auto *y = b.as<FieldAccess>();
    return x->field == y->field && sameExpr(x->base, y->base);
  }
  if (auto *x = a.as<Binary>()) {
    auto *y = b.as<Binary>();
    return x->op == y->op && sameExpr(x->lhs, y->lhs) && sameExpr(x->rhs, y->rhs);
  }
  if (auto *x = a.as<Logical>()) {
    auto *y = b.as<Logical>();
    return x->op == y->op && sameExpr(x->lhs, y->lhs) && sameExpr(x->rhs, y->rhs);
  }
  if (auto *x = a.as<Not>())
    return sameExpr(x->operand, b.as<Not>()->operand);
  if (auto *x = a.as<Call>()) {
    auto *y = b.as<Call>();
    if (x->callee != y->callee || x->args.size() != y->args.size())
      return false;
    for (std::size_t i = 0; i < x->args.size(); ++i)
      if (!sameExpr(x->args[i], y->args[i]))
        return false;
    return true;
  }
  if (auto *x = a.as<Malloc>()) {
    auto *y = b.as<Malloc>();
    return x->structName == y->structName && x->cast == y->cast;
  }
  if (auto *x = a.as<Assign>()) {
    auto *y = b.as<Assign>();
    return sameExpr(x->target, y->target) && sameExpr(x->value, y->value);
  }
  return false;
}

bool sameStmt(const StmtPtr &a, const StmtPtr &b) {
  if (!a || !b)
    return !a && !b;
  if (a->node.index() != b->node.index())
    return false;
  if (auto *x = a->as<Block>()) {
    auto *y = b->as<Block>();
    if (x->stmts.size() != y->stmts.size())
      return false;
    for (std::size_t i = 0; i < x->stmts.size(); ++i)
      if (!sameStmt(x->stmts[i], y->stmts[i]))
        return false;
    return true;
  }
  if (auto *x = a->as<ExprStmt>())
    return sameExpr(x->expr, b->as<ExprStmt>()->expr);
  if (auto *x = a->as<If>()) {
    auto *y = b->as<If>();
    return sameExpr(x->cond, y->cond) && sameStmt(x->then, y->then) &&
           sameStmt(x->otherwise, y->otherwise);
  }
  if (auto *x = a->as<While>()) {
    auto *y = b->as<While>();
    return sameExpr(x->cond, y->cond) && sameStmt(x->body, y->body);
  }
  if (auto *x = a->as<Return>())
    return sameExpr(x->value, b->as<Return>()->value);
  return true;
}

bool sameDecls(const std::vector<Declarator> &a, const std::vector<Declarator> &b) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].name != b[i].name || !(a[i].type == b[i].type))
      return false;
  return true;
}

} // namespace

std::string print(const Expr &expr) { return printExpr(expr); }

std::string print(const ParsedProgram &program) {
  std::ostringstream os;
  for (const StructDef &s : program.structs) {
    os << "struct " << s.name << " {\n";
    for (const Declarator &f : s.fields)
      os << "  " << typeSpelling(f.type) << " " << f.name << ";\n";
    os << "};\n\n";
  }
  for (const FunctionDef &fn : program.functions) {
    os << typeSpelling(fn.returnType) << " " << fn.name << "(";
    for (std::size_t i = 0; i < fn.params.size(); ++i)
      os << (i ? ", " : "") << typeSpelling(fn.params[i].type) << " "
         << fn.params[i].name;
    os << ") {\n";
    for (const Declarator &l : fn.locals)
      os << "  " << typeSpelling(l.type) << " " << l.name << ";\n";
    for (const StmtPtr &s : fn.body->as<Block>()->stmts)
      printStmt(os, *s, 1);
    os << "}\n\n";
  }
  return os.str();
}

bool sameShape(const ParsedProgram &a, const ParsedProgram &b) {
  if (a.structs.size() != b.structs.size() ||
      a.functions.size() != b.functions.size())
    return false;
  for (std::size_t i = 0; i < a.structs.size(); ++i)
    if (a.structs[i].name != b.structs[i].name ||
        !sameDecls(a.structs[i].fields, b.structs[i].fields))
      return false;
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const FunctionDef &x = a.functions[i], &y = b.functions[i];
    if (x.name != y.name || !(x.returnType == y.returnType) ||
        !sameDecls(x.params, y.params) || !sameDecls(x.locals, y.locals) ||
        !sameStmt(x.body, y.body))
      return false;
  }
  return true;
}

} // namespace specminer::frontend
