#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cgmc/error.hpp"

namespace cgmc::lcgs {

struct Expr;
using ExprRef = std::shared_ptr<const Expr>;

enum class UnOp { Neg, Not };
enum class BinOp { Add, Sub, Mul, Div, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

/// Immutable expression tree. Identifiers may carry a qualifier
/// (`player.symbol`); bare identifiers are resolved against the enclosing
/// scope during compilation.
struct Expr {
  enum class Kind { Int, Ident, Unary, Binary, MinMax } kind;
  SourcePos pos;

  long value = 0;          // Int
  std::string qualifier;   // Ident; empty when unqualified
  std::string name;        // Ident
  UnOp un_op = UnOp::Neg;  // Unary
  BinOp bin_op = BinOp::Add;
  bool is_min = false;     // MinMax: min(...) vs max(...)
  ExprRef lhs, rhs;        // Binary / MinMax
  ExprRef operand;         // Unary

  static ExprRef make_int(long v, SourcePos p = {});
  static ExprRef make_ident(std::string qualifier, std::string name, SourcePos p = {});
  static ExprRef make_unary(UnOp op, ExprRef e, SourcePos p = {});
  static ExprRef make_binary(BinOp op, ExprRef l, ExprRef r, SourcePos p = {});
  static ExprRef make_minmax(bool is_min, ExprRef l, ExprRef r, SourcePos p = {});
};

bool expr_equal(const Expr& a, const Expr& b);

struct ConstDecl {
  SourcePos pos;
  std::string name;
  ExprRef value;
};

struct VarDecl {
  SourcePos pos;
  std::string name;
  ExprRef lo, hi;
  ExprRef init;
};

struct UpdateDecl {
  SourcePos pos;
  std::string var;  // the primed name
  ExprRef expr;
};

struct LabelDecl {
  SourcePos pos;
  std::string name;
  ExprRef expr;
};

struct ActionDecl {
  SourcePos pos;
  std::string name;
  ExprRef availability;
};

struct TemplateDecl {
  SourcePos pos;
  std::string name;
  std::vector<VarDecl> vars;        // declaration order defines the state layout
  std::vector<UpdateDecl> updates;
  std::vector<LabelDecl> labels;
  std::vector<ActionDecl> actions;  // declaration order defines move identity
};

struct Relabel {
  SourcePos pos;
  std::string from;
  ExprRef to;
};

struct PlayerDecl {
  SourcePos pos;
  std::string name;
  std::string template_name;
  std::vector<Relabel> relabels;
};

struct Program {
  std::vector<ConstDecl> consts;
  std::vector<TemplateDecl> templates;
  std::vector<PlayerDecl> players;
};

bool program_equal(const Program& a, const Program& b);

/// Canonical text form; parse(print(p)) is structurally identical to p.
std::string print_expr(const Expr& e);
std::string print_program(const Program& p);

/// Folds integer arithmetic on literal operands. Identifiers are untouched.
/// Division and comparison folding follows the evaluator exactly; division by
/// a literal zero is left unfolded so the error surfaces with a state attached.
ExprRef fold_expr(const ExprRef& e);
Program fold_constants(const Program& p);

}  // namespace cgmc::lcgs
