#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "cgmc/cgs/game.hpp"

namespace cgmc::atl {

using FormulaId = uint32_t;

/// Coalition as a bitmask over player indices (at most 64 players).
struct PlayerSet {
  uint64_t bits = 0;

  bool contains(int a) const { return (bits >> a) & 1; }
  void add(int a) { bits |= uint64_t(1) << a; }
  bool empty() const { return bits == 0; }
  std::vector<int> members() const {
    std::vector<int> out;
    for (int a = 0; a < 64; ++a)
      if (contains(a)) out.push_back(a);
    return out;
  }
  friend bool operator==(PlayerSet x, PlayerSet y) { return x.bits == y.bits; }
};

enum class Kind : uint8_t {
  True,
  Prop,
  Not,
  Or,
  And,            // sugar
  EnforceNext,
  EnforceUntil,
  DespiteUntil,
  EnforceEventually,  // sugar
  EnforceInvariant,   // sugar
  DespiteNext,        // sugar
  DespiteEventually,  // sugar
  DespiteInvariant    // sugar
};

bool is_core(Kind k);

struct Node {
  Kind kind;
  FormulaId a = 0, b = 0;  // children where applicable
  PlayerSet players;       // quantified kinds
  int prop = -1;           // Prop
  int size = 1;            // tree node count
  int neg_depth = 0;       // max nesting of negations (after desugaring)
};

/// Hash-consing store: structurally identical formulas share one id, so
/// subformula identity is pointer identity. Construction is not thread-safe;
/// reads are.
class FormulaStore {
 public:
  FormulaId mk_true();
  FormulaId mk_prop(int prop);
  FormulaId mk_not(FormulaId f);
  FormulaId mk_or(FormulaId a, FormulaId b);
  FormulaId mk_and(FormulaId a, FormulaId b);
  FormulaId mk_enforce_next(PlayerSet A, FormulaId f);
  FormulaId mk_enforce_until(PlayerSet A, FormulaId a, FormulaId b);
  FormulaId mk_despite_until(PlayerSet A, FormulaId a, FormulaId b);
  FormulaId mk_enforce_eventually(PlayerSet A, FormulaId f);
  FormulaId mk_enforce_invariant(PlayerSet A, FormulaId f);
  FormulaId mk_despite_next(PlayerSet A, FormulaId f);
  FormulaId mk_despite_eventually(PlayerSet A, FormulaId f);
  FormulaId mk_despite_invariant(PlayerSet A, FormulaId f);

  const Node& node(FormulaId id) const { return nodes_[id]; }
  size_t size() const { return nodes_.size(); }

  /// Rewrites sugar into the six core forms:
  ///   a && b        -> !(!a || !b)
  ///   <<A>> F f     -> <<A>> (true U f)
  ///   [[A]] F f     -> [[A]] (true U f)
  ///   <<A>> G f     -> ![[A]] (true U !f)
  ///   [[A]] G f     -> !<<A>> (true U !f)
  ///   [[A]] X f     -> !<<A>> X !f
  /// Idempotent; output size is at most 4x the input size.
  FormulaId desugar(FormulaId f);

  int subformula_size(FormulaId f) const { return nodes_[f].size; }
  int negation_depth(FormulaId f) const { return nodes_[f].neg_depth; }

  std::string to_string(FormulaId f, const cgs::GameStructure* names = nullptr) const;

 private:
  FormulaId intern(Node n);

  std::deque<Node> nodes_;  // stable addresses: node() references never move
  std::map<std::tuple<uint8_t, FormulaId, FormulaId, uint64_t, int>, FormulaId> index_;
  std::map<FormulaId, FormulaId> desugar_memo_;
};

/// Parses the concrete query syntax against a game's player and label names:
///   props `player.label`, coalitions `<<p1, p2>>` / `[[p1]]`, temporal
///   X / F / G / (f U g), boolean ! && || with ! > && > ||, parentheses,
///   `true` / `false`. Quantifiers bind a single temporal operator.
FormulaId parse_formula(std::string_view text, const cgs::GameStructure& game,
                        FormulaStore& store);

}  // namespace cgmc::atl
