#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cgmc/cgs/expr.hpp"
#include "cgmc/error.hpp"

namespace cgmc::cgs {

/// Canonical id of an interned state vector. Dense, allocation order.
using StateId = uint32_t;

/// A joint move: one 1-based move index per player, moves[a] in 1..d_a(q).
using MoveVector = std::vector<int>;

/// Thread-safe state interner: same vector => same id, ids dense.
class StateStore {
 public:
  StateId intern(const std::vector<int>& values);
  std::span<const int> values(StateId id) const;
  size_t size() const;

 private:
  struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
      size_t h = 1469598103934665603ULL;
      for (int x : v) {
        h ^= static_cast<size_t>(static_cast<uint32_t>(x));
        h *= 1099511628211ULL;
      }
      return h;
    }
  };
  mutable std::shared_mutex mu_;
  std::unordered_map<std::vector<int>, StateId, VecHash> index_;
  std::deque<const std::vector<int>*> rows_;  // id -> key in index_
};

/// The concurrent game abstraction: players pick moves simultaneously and a
/// deterministic transition yields the next state. Implementations must be
/// immutable after construction and thread-safe for all calls.
class GameStructure {
 public:
  virtual ~GameStructure() = default;

  virtual int player_count() const = 0;
  virtual StateId initial_state() const = 0;

  /// d_a(q): number of moves available to `player` at q. Always >= 1; a model
  /// where a player has no available action raises Error(Model).
  virtual int move_count(StateId q, int player) const = 0;

  /// delta(q, v). v must be valid at q.
  virtual StateId transition(StateId q, const MoveVector& v) const = 0;

  /// Proposition ids truthy at q, sorted ascending.
  virtual std::vector<int> labels(StateId q) const = 0;

  virtual std::span<const int> state_values(StateId q) const = 0;

  virtual int prop_count() const = 0;
  virtual const std::string& prop_name(int prop) const = 0;
  virtual std::optional<int> find_prop(const std::string& name) const = 0;
  virtual const std::string& player_name(int player) const = 0;
  virtual std::optional<int> find_player(const std::string& name) const = 0;

  /// Name of move j (1-based) of `player` at q, for human-readable output.
  virtual std::string move_name(StateId q, int player, int move) const = 0;

  /// State-vector metadata; used by search heuristics and exports.
  virtual int var_count() const = 0;
  virtual const std::string& var_name(int slot) const = 0;
  virtual std::pair<int, int> var_range(int slot) const = 0;

  /// Defining expression of a proposition, when the game has one. Heuristics
  /// inspect it; nullptr disables expression-based heuristics.
  virtual const Expr* label_expr(int /*prop*/) const { return nullptr; }

  /// Renders q as "(name=value, ...)".
  std::string describe_state(StateId q) const;
};

/// Evaluates an expression against a state. The expression must not contain
/// action indicators (those only exist while a transition is computed).
long eval_expr(const GameStructure& game, StateId q, const Expr& e);

/// All move vectors of q in lexicographic order, first player most
/// significant: (1,1), (1,2), ..., (d_1, d_k).
std::vector<MoveVector> move_vectors(const GameStructure& game, StateId q);

}  // namespace cgmc::cgs
