#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cgmc/error.hpp"

namespace cgmc::cgs {

/// Per-transition context: for each player, the declaration index of the
/// action taken. Action-indicator nodes are only legal while a transition is
/// being computed.
struct ActionCtx {
  std::span<const int> taken;
};

/// Compiled expression over a state vector. Nodes live in a flat pool;
/// `root()` is the entry node. Comparisons and boolean connectives yield 0/1,
/// any nonzero value is truthy. Division truncates toward zero; division by
/// zero raises Error(Model).
class Expr {
 public:
  enum class Op : uint8_t {
    Const,   // a = value
    Var,     // a = state slot
    Action,  // a = player index, b = action declaration index
    Add, Sub, Mul, Div,
    Lt, Le, Gt, Ge, Eq, Ne,
    And, Or, Not, Neg,
    Min, Max
  };

  struct Node {
    Op op;
    int32_t a = 0;
    int32_t b = 0;
  };

  Expr() = default;

  int32_t add_node(Node n) {
    nodes_.push_back(n);
    return static_cast<int32_t>(nodes_.size()) - 1;
  }
  void set_root(int32_t r) { root_ = r; }
  int32_t root() const { return root_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int32_t i) const { return nodes_[i]; }
  bool empty() const { return nodes_.empty(); }

  long eval(std::span<const int> state, const ActionCtx* actions = nullptr) const {
    return eval_at(root_, state, actions);
  }
  long eval_at(int32_t node, std::span<const int> state,
               const ActionCtx* actions = nullptr) const;

  /// True when this expression mentions an action indicator anywhere.
  bool uses_actions() const;

 private:
  std::vector<Node> nodes_;
  int32_t root_ = -1;
};

}  // namespace cgmc::cgs
