#pragma once

#include <cstdint>

#include "cgmc/edg/edg.hpp"

namespace cgmc::solver {

/// Fully materialized EDG reachable from a root. Requires a ConfigStore that
/// is private to the build, so config ids are dense 0..config_count-1.
struct Graph {
  edg::ConfigId root = 0;
  size_t config_count = 0;
  std::vector<edg::HyperEdge> hyper;
  std::vector<edg::NegationEdge> negation;
  std::vector<std::vector<uint32_t>> out_hyper;  // config -> hyper edge indices
  std::vector<std::vector<uint32_t>> out_neg;    // config -> negation edge indices
  std::vector<std::vector<uint32_t>> in_hyper;   // config -> hyper edges targeting it
  std::vector<std::vector<uint32_t>> in_neg;     // config -> negation edges targeting it
  std::vector<int> dist;                         // per config, by backward propagation
  int graph_dist = 0;                            // max over configs
};

/// Explores everything reachable from root. Throws Error(Resource) with the
/// explored count when max_configs is exceeded.
Graph build_graph(edg::Context& ctx, edg::ConfigId root, size_t max_configs = 5000000);

/// Component K_i as the configurations with dist <= i; K_0 never holds
/// negation edges and the sets grow monotonically up to K_dist(G).
std::vector<std::vector<edg::ConfigId>> components(const Graph& g);

struct SolveStats {
  size_t value_flips = 0;      // 0 -> 1 transitions; at most one per config
  size_t early_component_writes = 0;  // writes into an already-solved component
};

/// Minimum fixed point over components K_0..K_dist(G), ascending. The
/// assignment vector is indexed by config id; the conjunction over an empty
/// target set is true, the disjunction over no edges false.
std::vector<uint8_t> solve_components(const Graph& g, SolveStats* stats = nullptr);

struct GlobalRun {
  bool verdict = false;
  Graph graph;
  std::vector<uint8_t> assignment;
  SolveStats stats;
};

/// Builds and solves the EDG rooted at <q0, phi>. phi must be core-form.
GlobalRun run_global(edg::Context& ctx, cgs::StateId q0, atl::FormulaId phi,
                     size_t max_configs = 5000000);

/// End-to-end: desugars phi, builds private stores, returns the verdict of
/// the initial state.
bool check_global(const cgs::GameStructure& game, atl::FormulaStore& formulas,
                  atl::FormulaId phi);

}  // namespace cgmc::solver
