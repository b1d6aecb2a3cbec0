#pragma once

#include <memory>
#include <mutex>

#include "cgmc/cgs/game.hpp"
#include "cgmc/lcgs/compiler.hpp"

namespace cgmc::cgs {

/// GameStructure backed by a compiled LCGS definition. States are
/// materialized on demand and interned; per-state derived data (available
/// actions, labels, the successor table) is cached so repeated exploration of
/// the same state is cheap. All methods are thread-safe.
class LcgsGame : public GameStructure {
 public:
  explicit LcgsGame(lcgs::CompiledGame game);

  int player_count() const override { return static_cast<int>(game_.players.size()); }
  StateId initial_state() const override { return initial_; }
  int move_count(StateId q, int player) const override;
  StateId transition(StateId q, const MoveVector& v) const override;
  std::vector<int> labels(StateId q) const override;
  std::span<const int> state_values(StateId q) const override {
    return states_.values(q);
  }

  int prop_count() const override { return static_cast<int>(game_.labels.size()); }
  const std::string& prop_name(int prop) const override {
    return game_.labels[prop].qualified_name;
  }
  std::optional<int> find_prop(const std::string& name) const override;
  const std::string& player_name(int player) const override {
    return game_.players[player].name;
  }
  std::optional<int> find_player(const std::string& name) const override;
  std::string move_name(StateId q, int player, int move) const override;

  int var_count() const override { return static_cast<int>(game_.vars.size()); }
  const std::string& var_name(int slot) const override {
    return game_.vars[slot].qualified_name;
  }
  std::pair<int, int> var_range(int slot) const override {
    return {game_.vars[slot].lo, game_.vars[slot].hi};
  }
  const Expr* label_expr(int prop) const override { return &game_.labels[prop].expr; }

  const lcgs::CompiledGame& definition() const { return game_; }

  /// Interns an arbitrary in-range vector; mainly for tests and tools that
  /// need to talk about states other than the reachable ones.
  StateId state_from_values(const std::vector<int>& values) const {
    return states_.intern(values);
  }

  /// Successor ids for every move vector of q in lexicographic order.
  /// Cached; strides follow move_vectors() enumeration.
  const std::vector<StateId>& successor_table(StateId q) const;

  /// Available action declaration indices per player at q.
  const std::vector<std::vector<int>>& available_actions(StateId q) const;

  size_t states_interned() const { return states_.size(); }

 private:
  struct StateInfo {
    std::vector<std::vector<int>> avail;  // per player, action decl indices
    std::vector<int> labels;
    std::unique_ptr<std::vector<StateId>> successors;  // lazy
  };

  StateInfo& info(StateId q) const;
  StateId apply_moves(StateId q, const std::vector<int>& taken) const;

  lcgs::CompiledGame game_;
  mutable StateStore states_;
  StateId initial_;

  mutable std::mutex cache_mu_;
  mutable std::unordered_map<StateId, std::unique_ptr<StateInfo>> cache_;
};

}  // namespace cgmc::cgs
