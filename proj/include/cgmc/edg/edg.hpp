#pragma once

#include <deque>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "cgmc/atl/formula.hpp"
#include "cgmc/cgs/game.hpp"

namespace cgmc::edg {

/// A partial move: per player either a fixed 1-based move index or 0 (free,
/// ranging over 1..d_a(q)). Coalition members are always fixed.
struct PartialMove {
  std::vector<int> fixed;

  friend bool operator==(const PartialMove& a, const PartialMove& b) {
    return a.fixed == b.fixed;
  }
  bool operator<(const PartialMove& o) const { return fixed < o.fixed; }
};

/// All partial moves the coalition can commit to at q, in lexicographic order
/// (lowest coalition member most significant). |result| is the product of the
/// coalition members' move counts; the empty coalition yields { D(q) }.
std::vector<PartialMove> pmoves(const cgs::GameStructure& game, cgs::StateId q,
                                atl::PlayerSet A);

/// The set of move vectors a partial move contains, in lexicographic order.
std::vector<cgs::MoveVector> expand_pmove(const cgs::GameStructure& game,
                                          cgs::StateId q, const PartialMove& V);

/// Partial transition: successor states under every completion of V,
/// deduplicated, sorted by state id.
std::vector<cgs::StateId> partial_transition(const cgs::GameStructure& game,
                                             cgs::StateId q, const PartialMove& V);

using ConfigId = uint32_t;

/// An EDG vertex: a (state, formula) pair, or a (state, partial move,
/// formula) triple for partially committed despite-until configurations.
struct Config {
  cgs::StateId state;
  atl::FormulaId formula;
  std::optional<PartialMove> pmove;
  uint64_t content_hash;  // stable across runs (state values, formula, pmove)
  int dist;               // negation depth of `formula`
};

/// Thread-safe interner: structural equality implies identical id.
class ConfigStore {
 public:
  ConfigStore(const cgs::GameStructure& game, const atl::FormulaStore& formulas)
      : game_(game), formulas_(formulas) {}

  ConfigId intern(cgs::StateId state, atl::FormulaId formula,
                  std::optional<PartialMove> pmove = std::nullopt);
  /// Returns a copy: rows may grow concurrently while callers hold the result.
  Config config(ConfigId id) const;
  size_t size() const;

  /// Canonical content order: state id, then formula id, then partial move.
  bool content_less(ConfigId a, ConfigId b) const;

  std::string describe(ConfigId id) const;

  const cgs::GameStructure& game() const { return game_; }
  const atl::FormulaStore& formulas() const { return formulas_; }

 private:
  struct Key {
    cgs::StateId state;
    atl::FormulaId formula;
    std::vector<int> pmove;  // empty = none; encoded with leading flag
    bool has_pmove;
    bool operator==(const Key& o) const {
      return state == o.state && formula == o.formula && has_pmove == o.has_pmove &&
             pmove == o.pmove;
    }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      size_t h = 1469598103934665603ULL;
      auto mix = [&](uint64_t x) {
        h ^= x;
        h *= 1099511628211ULL;
      };
      mix(k.state);
      mix(k.formula);
      mix(k.has_pmove);
      for (int v : k.pmove) mix(static_cast<uint64_t>(v) + 0x9e3779b9);
      return h;
    }
  };

  const cgs::GameStructure& game_;
  const atl::FormulaStore& formulas_;
  mutable std::shared_mutex mu_;
  std::unordered_map<Key, ConfigId, KeyHash> index_;
  std::deque<Config> rows_;
};

/// Conjunctive hyper-edge. `pmove` records the partial move that produced the
/// edge (enforce next/until cases) and certifies strategy witnesses.
struct HyperEdge {
  ConfigId source;
  std::vector<ConfigId> targets;  // deduplicated, canonical order
  std::optional<PartialMove> pmove;
};

struct NegationEdge {
  ConfigId source;
  ConfigId target;
};

struct EdgeSet {
  std::vector<HyperEdge> hyper;
  std::vector<NegationEdge> negation;
};

struct Context {
  const cgs::GameStructure& game;
  atl::FormulaStore& formulas;
  ConfigStore& configs;
};

/// Outgoing edges of a configuration. The formula must be in core form.
/// Deterministic: identical inputs produce identical edge lists; duplicate
/// edges (same source and target set) are merged keeping the first partial
/// move annotation.
EdgeSet successors(ConfigId c, Context& ctx);

}  // namespace cgmc::edg
