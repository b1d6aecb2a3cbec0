#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "cgmc/atl/formula.hpp"
#include "cgmc/cgs/game.hpp"

namespace cgmc::test::oracle {

/// Reachable state space of a game, enumerated breadth-first from the
/// initial state. Throws Error(Resource) past `cap` states.
struct Enumeration {
  std::vector<cgs::StateId> states;
  std::unordered_map<cgs::StateId, int> index;
};

Enumeration enumerate(const cgs::GameStructure& game, size_t cap = 10000);

/// Direct ATL satisfaction sets via controllable-predecessor fixed points.
/// `core` must be in core form; the result is indexed by enumeration order.
std::vector<bool> sat_set(const cgs::GameStructure& game,
                          const atl::FormulaStore& formulas, atl::FormulaId core,
                          const Enumeration& en);

/// Convenience: desugars and evaluates at one state.
bool sat(const cgs::GameStructure& game, atl::FormulaStore& formulas,
         atl::FormulaId phi, cgs::StateId q, size_t cap = 10000);

/// A positional strategy per coalition member: moves[a][i] is player a's
/// 1-based move at enumeration index i.
struct StrategyProfile {
  std::map<int, std::vector<int>> moves;
};

/// All distinct state prefixes with `depth` transitions (depth+1 states)
/// where coalition members follow the profile and the rest range freely.
std::vector<std::vector<cgs::StateId>> outcomes(const cgs::GameStructure& game,
                                                cgs::StateId q,
                                                const StrategyProfile& profile,
                                                int depth, const Enumeration& en);

/// Reference semantics by enumerating all positional strategy profiles of
/// the quantified coalitions; until formulas are decided on prefixes of
/// length |Q|+1 (sound for positional strategies by state revisiting).
/// Throws Error(Resource) when the profile space exceeds `profile_cap`.
bool brute_force_check(const cgs::GameStructure& game,
                       const atl::FormulaStore& formulas, atl::FormulaId core,
                       cgs::StateId q, const Enumeration& en,
                       size_t profile_cap = 1000000);

}  // namespace cgmc::test::oracle
