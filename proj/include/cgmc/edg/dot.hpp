#pragma once

#include <string>

#include "cgmc/edg/edg.hpp"
#include "cgmc/solver/global.hpp"

namespace cgmc::edg {

/// Reachable CGS as a dot digraph: states as nodes labelled with variable
/// values, one edge per distinct successor. Move-vector labels (action-name
/// tuples) can be elided.
std::string dot_cgs(const cgs::GameStructure& game, bool move_labels = true,
                    size_t max_states = 1000000);

/// Explored EDG as a dot digraph: configurations as boxes, hyper-edges drawn
/// through intermediate join points (an edge with no targets keeps its join
/// point as the empty-target marker), negation edges dashed.
std::string dot_edg(const ConfigStore& configs, const solver::Graph& graph);

}  // namespace cgmc::edg
