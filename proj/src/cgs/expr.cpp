#include "cgmc/cgs/expr.hpp"

#include <algorithm>
#include <cassert>

namespace cgmc::cgs {

long Expr::eval_at(int32_t idx, std::span<const int> state,
                   const ActionCtx* actions) const {
  const Node& n = nodes_[idx];
  switch (n.op) {
    case Op::Const:
      return n.a;
    case Op::Var:
      assert(n.a >= 0 && static_cast<size_t>(n.a) < state.size());
      return state[n.a];
    case Op::Action:
      if (actions == nullptr)
        throw Error(ErrorKind::Model,
                    "action indicator evaluated outside a transition");
      return actions->taken[n.a] == n.b ? 1 : 0;
    case Op::Add:
      return eval_at(n.a, state, actions) + eval_at(n.b, state, actions);
    case Op::Sub:
      return eval_at(n.a, state, actions) - eval_at(n.b, state, actions);
    case Op::Mul:
      return eval_at(n.a, state, actions) * eval_at(n.b, state, actions);
    case Op::Div: {
      long d = eval_at(n.b, state, actions);
      if (d == 0) throw Error(ErrorKind::Model, "division by zero");
      return eval_at(n.a, state, actions) / d;
    }
    case Op::Lt:
      return eval_at(n.a, state, actions) < eval_at(n.b, state, actions) ? 1 : 0;
    case Op::Le:
      return eval_at(n.a, state, actions) <= eval_at(n.b, state, actions) ? 1 : 0;
    case Op::Gt:
      return eval_at(n.a, state, actions) > eval_at(n.b, state, actions) ? 1 : 0;
    case Op::Ge:
      return eval_at(n.a, state, actions) >= eval_at(n.b, state, actions) ? 1 : 0;
    case Op::Eq:
      return eval_at(n.a, state, actions) == eval_at(n.b, state, actions) ? 1 : 0;
    case Op::Ne:
      return eval_at(n.a, state, actions) != eval_at(n.b, state, actions) ? 1 : 0;
    case Op::And:
      return eval_at(n.a, state, actions) != 0 && eval_at(n.b, state, actions) != 0
                 ? 1
                 : 0;
    case Op::Or:
      return eval_at(n.a, state, actions) != 0 || eval_at(n.b, state, actions) != 0
                 ? 1
                 : 0;
    case Op::Not:
      return eval_at(n.a, state, actions) == 0 ? 1 : 0;
    case Op::Neg:
      return -eval_at(n.a, state, actions);
    case Op::Min:
      return std::min(eval_at(n.a, state, actions), eval_at(n.b, state, actions));
    case Op::Max:
      return std::max(eval_at(n.a, state, actions), eval_at(n.b, state, actions));
  }
  return 0;
}

bool Expr::uses_actions() const {
  for (const Node& n : nodes_)
    if (n.op == Op::Action) return true;
  return false;
}

}  // namespace cgmc::cgs
