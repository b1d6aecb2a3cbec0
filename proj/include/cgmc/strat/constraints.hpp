#pragma once

#include <vector>

#include "cgmc/atl/formula.hpp"
#include "cgmc/strat/lp.hpp"

namespace cgmc::strat {

/// Transforms a formula into its satisfaction region as a disjunction of
/// linear constraint systems over the state vector:
///   - proposition definitions are inlined and decomposed over &&/||/!,
///   - comparisons over affine expressions become rows of C s >= b (strict
///     comparisons tightened by 1, integer semantics),
///   - until/eventually/invariant descend into the constituent subformula,
///     next into its operand,
///   - non-affine atoms are dropped (the region only ever gets larger),
///   - systems that end up with no rows are discarded.
/// An empty result means "no linear information" and ranks last.
std::vector<LinearSystem> extract_constraints(const cgs::GameStructure& game,
                                              const atl::FormulaStore& formulas,
                                              atl::FormulaId f);

}  // namespace cgmc::strat
