#pragma once

#include "cgmc/atl/formula.hpp"
#include "cgmc/cgs/game.hpp"

namespace cgmc::strat {

/// Instability estimate of a formula in a state: t is the estimated distance
/// to the formula being true, f to it being false. Components may be
/// negative.
struct BiDist {
  long t = 0;
  long f = 0;
  friend bool operator==(BiDist a, BiDist b) { return a.t == b.t && a.f == b.f; }
};

inline BiDist meet(BiDist a, BiDist b) {
  return BiDist{a.t + b.t, std::min(a.f, b.f)};
}
inline BiDist join(BiDist a, BiDist b) {
  return BiDist{std::min(a.t, b.t), a.f + b.f};
}

/// Case analysis over the formula structure. Comparison atoms come from
/// proposition definitions: a label defined by a single comparison is
/// inlined; any other atom is the neutral <0,0>. Evaluation errors inside a
/// label also yield the neutral element (this is a heuristic, not a verdict).
BiDist bidist(const cgs::GameStructure& game, const atl::FormulaStore& formulas,
              cgs::StateId q, atl::FormulaId f);

}  // namespace cgmc::strat
