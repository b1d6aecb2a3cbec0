#include "cgmc/strat/bidist.hpp"

namespace cgmc::strat {

namespace {

BiDist prop_bidist(const cgs::GameStructure& game, cgs::StateId q, int prop) {
  const cgs::Expr* e = game.label_expr(prop);
  if (!e || e->empty()) return {0, 0};
  const auto& root = e->node(e->root());
  using Op = cgs::Expr::Op;
  bool flipped;
  switch (root.op) {
    case Op::Lt:
    case Op::Le:
      flipped = false;
      break;
    case Op::Gt:
    case Op::Ge:
      flipped = true;
      break;
    default:
      return {0, 0};
  }
  long v;
  try {
    auto vals = game.state_values(q);
    long lhs = e->eval_at(root.a, vals, nullptr);
    long rhs = e->eval_at(root.b, vals, nullptr);
    v = flipped ? rhs - lhs : lhs - rhs;
  } catch (const Error&) {
    return {0, 0};
  }
  return v > 0 ? BiDist{v, 0} : BiDist{0, v};
}

}  // namespace

BiDist bidist(const cgs::GameStructure& game, const atl::FormulaStore& fs,
              cgs::StateId q, atl::FormulaId f) {
  const atl::Node& n = fs.node(f);
  switch (n.kind) {
    case atl::Kind::True:
      return {0, 0};
    case atl::Kind::Prop:
      return prop_bidist(game, q, n.prop);
    case atl::Kind::Not: {
      BiDist d = bidist(game, fs, q, n.a);
      return {d.f, d.t};
    }
    case atl::Kind::And:
      return meet(bidist(game, fs, q, n.a), bidist(game, fs, q, n.b));
    case atl::Kind::Or:
      return join(bidist(game, fs, q, n.a), bidist(game, fs, q, n.b));
    case atl::Kind::EnforceNext:
    case atl::Kind::DespiteNext:
    case atl::Kind::EnforceEventually:
    case atl::Kind::DespiteEventually:
    case atl::Kind::EnforceInvariant:
    case atl::Kind::DespiteInvariant:
      return bidist(game, fs, q, n.a);
    case atl::Kind::EnforceUntil:
    case atl::Kind::DespiteUntil:
      return join(bidist(game, fs, q, n.a), bidist(game, fs, q, n.b));
  }
  return {0, 0};
}

}  // namespace cgmc::strat
