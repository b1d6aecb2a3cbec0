#include "cgmc/lcgs/ast.hpp"

#include <sstream>

namespace cgmc::lcgs {

ExprRef Expr::make_int(long v, SourcePos p) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Int;
  e->pos = p;
  e->value = v;
  return e;
}

ExprRef Expr::make_ident(std::string qualifier, std::string name, SourcePos p) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Ident;
  e->pos = p;
  e->qualifier = std::move(qualifier);
  e->name = std::move(name);
  return e;
}

ExprRef Expr::make_unary(UnOp op, ExprRef inner, SourcePos p) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Unary;
  e->pos = p;
  e->un_op = op;
  e->operand = std::move(inner);
  return e;
}

ExprRef Expr::make_binary(BinOp op, ExprRef l, ExprRef r, SourcePos p) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Binary;
  e->pos = p;
  e->bin_op = op;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

ExprRef Expr::make_minmax(bool is_min, ExprRef l, ExprRef r, SourcePos p) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::MinMax;
  e->pos = p;
  e->is_min = is_min;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Int:
      return a.value == b.value;
    case Expr::Kind::Ident:
      return a.qualifier == b.qualifier && a.name == b.name;
    case Expr::Kind::Unary:
      return a.un_op == b.un_op && expr_equal(*a.operand, *b.operand);
    case Expr::Kind::Binary:
      return a.bin_op == b.bin_op && expr_equal(*a.lhs, *b.lhs) &&
             expr_equal(*a.rhs, *b.rhs);
    case Expr::Kind::MinMax:
      return a.is_min == b.is_min && expr_equal(*a.lhs, *b.lhs) &&
             expr_equal(*a.rhs, *b.rhs);
  }
  return false;
}

namespace {

int precedence(BinOp op) {
  switch (op) {
    case BinOp::Or: return 1;
    case BinOp::And: return 2;
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
    case BinOp::Eq:
    case BinOp::Ne: return 3;
    case BinOp::Add:
    case BinOp::Sub: return 4;
    case BinOp::Mul:
    case BinOp::Div: return 5;
  }
  return 0;
}

const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

void print_rec(const Expr& e, int parent_prec, std::ostream& os) {
  switch (e.kind) {
    case Expr::Kind::Int:
      os << e.value;
      return;
    case Expr::Kind::Ident:
      if (!e.qualifier.empty()) os << e.qualifier << '.';
      os << e.name;
      return;
    case Expr::Kind::Unary:
      os << (e.un_op == UnOp::Not ? "!" : "-");
      os << '(';
      print_rec(*e.operand, 0, os);
      os << ')';
      return;
    case Expr::Kind::Binary: {
      int prec = precedence(e.bin_op);
      bool parens = prec < parent_prec;
      if (parens) os << '(';
      print_rec(*e.lhs, prec, os);
      os << ' ' << op_text(e.bin_op) << ' ';
      print_rec(*e.rhs, prec + 1, os);
      if (parens) os << ')';
      return;
    }
    case Expr::Kind::MinMax:
      os << (e.is_min ? "min(" : "max(");
      print_rec(*e.lhs, 0, os);
      os << ", ";
      print_rec(*e.rhs, 0, os);
      os << ')';
      return;
  }
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::ostringstream os;
  print_rec(e, 0, os);
  return os.str();
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (const auto& c : p.consts)
    os << "const " << c.name << " = " << print_expr(*c.value) << ";\n";
  for (const auto& t : p.templates) {
    os << "template " << t.name << "\n";
    for (const auto& v : t.vars)
      os << "    " << v.name << " : [" << print_expr(*v.lo) << " .. "
         << print_expr(*v.hi) << "] init " << print_expr(*v.init) << ";\n";
    for (const auto& u : t.updates)
      os << "    " << u.var << "' = " << print_expr(*u.expr) << ";\n";
    for (const auto& l : t.labels)
      os << "    label " << l.name << " = " << print_expr(*l.expr) << ";\n";
    for (const auto& a : t.actions)
      os << "    [" << a.name << "] " << print_expr(*a.availability) << ";\n";
    os << "endtemplate\n";
  }
  for (const auto& pl : p.players) {
    os << "player " << pl.name << " = " << pl.template_name << " [";
    for (size_t i = 0; i < pl.relabels.size(); ++i) {
      if (i) os << ", ";
      os << pl.relabels[i].from << "=" << print_expr(*pl.relabels[i].to);
    }
    os << "];\n";
  }
  return os.str();
}

bool program_equal(const Program& a, const Program& b) {
  if (a.consts.size() != b.consts.size() || a.templates.size() != b.templates.size() ||
      a.players.size() != b.players.size())
    return false;
  for (size_t i = 0; i < a.consts.size(); ++i)
    if (a.consts[i].name != b.consts[i].name ||
        !expr_equal(*a.consts[i].value, *b.consts[i].value))
      return false;
  for (size_t i = 0; i < a.templates.size(); ++i) {
    const auto& x = a.templates[i];
    const auto& y = b.templates[i];
    if (x.name != y.name || x.vars.size() != y.vars.size() ||
        x.updates.size() != y.updates.size() || x.labels.size() != y.labels.size() ||
        x.actions.size() != y.actions.size())
      return false;
    for (size_t k = 0; k < x.vars.size(); ++k)
      if (x.vars[k].name != y.vars[k].name || !expr_equal(*x.vars[k].lo, *y.vars[k].lo) ||
          !expr_equal(*x.vars[k].hi, *y.vars[k].hi) ||
          !expr_equal(*x.vars[k].init, *y.vars[k].init))
        return false;
    for (size_t k = 0; k < x.updates.size(); ++k)
      if (x.updates[k].var != y.updates[k].var ||
          !expr_equal(*x.updates[k].expr, *y.updates[k].expr))
        return false;
    for (size_t k = 0; k < x.labels.size(); ++k)
      if (x.labels[k].name != y.labels[k].name ||
          !expr_equal(*x.labels[k].expr, *y.labels[k].expr))
        return false;
    for (size_t k = 0; k < x.actions.size(); ++k)
      if (x.actions[k].name != y.actions[k].name ||
          !expr_equal(*x.actions[k].availability, *y.actions[k].availability))
        return false;
  }
  for (size_t i = 0; i < a.players.size(); ++i) {
    const auto& x = a.players[i];
    const auto& y = b.players[i];
    if (x.name != y.name || x.template_name != y.template_name ||
        x.relabels.size() != y.relabels.size())
      return false;
    for (size_t k = 0; k < x.relabels.size(); ++k)
      if (x.relabels[k].from != y.relabels[k].from ||
          !expr_equal(*x.relabels[k].to, *y.relabels[k].to))
        return false;
  }
  return true;
}

namespace {

bool as_int(const ExprRef& e, long& out) {
  if (e->kind == Expr::Kind::Int) {
    out = e->value;
    return true;
  }
  return false;
}

}  // namespace

ExprRef fold_expr(const ExprRef& e) {
  switch (e->kind) {
    case Expr::Kind::Int:
    case Expr::Kind::Ident:
      return e;
    case Expr::Kind::Unary: {
      ExprRef inner = fold_expr(e->operand);
      long v;
      if (as_int(inner, v))
        return Expr::make_int(e->un_op == UnOp::Neg ? -v : (v == 0 ? 1 : 0), e->pos);
      if (inner == e->operand) return e;
      return Expr::make_unary(e->un_op, inner, e->pos);
    }
    case Expr::Kind::Binary: {
      ExprRef l = fold_expr(e->lhs);
      ExprRef r = fold_expr(e->rhs);
      long a, b;
      if (as_int(l, a) && as_int(r, b)) {
        switch (e->bin_op) {
          case BinOp::Add: return Expr::make_int(a + b, e->pos);
          case BinOp::Sub: return Expr::make_int(a - b, e->pos);
          case BinOp::Mul: return Expr::make_int(a * b, e->pos);
          case BinOp::Div:
            if (b != 0) return Expr::make_int(a / b, e->pos);
            break;  // leave for the evaluator to report with context
          case BinOp::Lt: return Expr::make_int(a < b ? 1 : 0, e->pos);
          case BinOp::Le: return Expr::make_int(a <= b ? 1 : 0, e->pos);
          case BinOp::Gt: return Expr::make_int(a > b ? 1 : 0, e->pos);
          case BinOp::Ge: return Expr::make_int(a >= b ? 1 : 0, e->pos);
          case BinOp::Eq: return Expr::make_int(a == b ? 1 : 0, e->pos);
          case BinOp::Ne: return Expr::make_int(a != b ? 1 : 0, e->pos);
          case BinOp::And: return Expr::make_int((a != 0 && b != 0) ? 1 : 0, e->pos);
          case BinOp::Or: return Expr::make_int((a != 0 || b != 0) ? 1 : 0, e->pos);
        }
      }
      if (l == e->lhs && r == e->rhs) return e;
      return Expr::make_binary(e->bin_op, l, r, e->pos);
    }
    case Expr::Kind::MinMax: {
      ExprRef l = fold_expr(e->lhs);
      ExprRef r = fold_expr(e->rhs);
      long a, b;
      if (as_int(l, a) && as_int(r, b))
        return Expr::make_int(e->is_min ? std::min(a, b) : std::max(a, b), e->pos);
      if (l == e->lhs && r == e->rhs) return e;
      return Expr::make_minmax(e->is_min, l, r, e->pos);
    }
  }
  return e;
}

Program fold_constants(const Program& p) {
  Program out = p;
  for (auto& c : out.consts) c.value = fold_expr(c.value);
  for (auto& t : out.templates) {
    for (auto& v : t.vars) {
      v.lo = fold_expr(v.lo);
      v.hi = fold_expr(v.hi);
      v.init = fold_expr(v.init);
    }
    for (auto& u : t.updates) u.expr = fold_expr(u.expr);
    for (auto& l : t.labels) l.expr = fold_expr(l.expr);
    for (auto& a : t.actions) a.availability = fold_expr(a.availability);
  }
  for (auto& pl : out.players)
    for (auto& r : pl.relabels) r.to = fold_expr(r.to);
  return out;
}

}  // namespace cgmc::lcgs
