#pragma once

#include <memory>
#include <random>

#include "cgmc/atl/formula.hpp"
#include "support/explicit_game.hpp"

namespace cgmc::test {

/// Random tabular game: `states` states, `players` players with 1..max_moves
/// moves each, uniformly random transitions and labellings over `props`
/// propositions.
std::unique_ptr<ExplicitGame> random_game(std::mt19937& rng, int states = 6,
                                          int players = 2, int max_moves = 3,
                                          int props = 2);

/// Formula templates over props {0,1} and coalitions of a 2-player game:
/// covers all six core forms, every sugar form, and nestings of depth <= 3.
std::vector<atl::FormulaId> formula_templates(atl::FormulaStore& store);

}  // namespace cgmc::test
