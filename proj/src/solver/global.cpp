#include "cgmc/solver/global.hpp"

#include <cassert>
#include <deque>

#include "cgmc/error.hpp"

namespace cgmc::solver {

Graph build_graph(edg::Context& ctx, edg::ConfigId root, size_t max_configs) {
  Graph g;
  g.root = root;
  std::deque<edg::ConfigId> frontier{root};
  size_t next_unexplored = root;  // store ids are dense; explore in id order
  std::vector<bool> expanded;

  auto ensure = [&](size_t n) {
    if (expanded.size() < n) expanded.resize(n, false);
  };

  while (!frontier.empty()) {
    edg::ConfigId c = frontier.front();
    frontier.pop_front();
    ensure(c + 1);
    if (expanded[c]) continue;
    expanded[c] = true;

    edg::EdgeSet es = edg::successors(c, ctx);
    for (auto& e : es.hyper) {
      uint32_t id = static_cast<uint32_t>(g.hyper.size());
      for (edg::ConfigId t : e.targets) {
        ensure(t + 1);
        if (!expanded[t]) frontier.push_back(t);
      }
      g.hyper.push_back(std::move(e));
      (void)id;
    }
    for (auto& e : es.negation) {
      ensure(e.target + 1);
      if (!expanded[e.target]) frontier.push_back(e.target);
      g.negation.push_back(e);
    }
    if (ctx.configs.size() > max_configs)
      throw Error(ErrorKind::Resource,
                  "EDG exceeds " + std::to_string(max_configs) +
                      " configurations (explored " +
                      std::to_string(ctx.configs.size()) + ")");
  }
  (void)next_unexplored;

  g.config_count = ctx.configs.size();
  g.out_hyper.resize(g.config_count);
  g.out_neg.resize(g.config_count);
  g.in_hyper.resize(g.config_count);
  g.in_neg.resize(g.config_count);
  for (uint32_t i = 0; i < g.hyper.size(); ++i) {
    g.out_hyper[g.hyper[i].source].push_back(i);
    for (edg::ConfigId t : g.hyper[i].targets) g.in_hyper[t].push_back(i);
  }
  for (uint32_t i = 0; i < g.negation.size(); ++i) {
    g.out_neg[g.negation[i].source].push_back(i);
    g.in_neg[g.negation[i].target].push_back(i);
  }

  // dist by backward propagation: dist(c) >= dist(t) over hyper edges,
  // dist(c) >= dist(t)+1 over negation edges. Worklist until stable.
  g.dist.assign(g.config_count, 0);
  std::deque<edg::ConfigId> work;
  std::vector<bool> queued(g.config_count, false);
  auto raise = [&](edg::ConfigId c, int v) {
    if (v > g.dist[c]) {
      g.dist[c] = v;
      if (!queued[c]) {
        queued[c] = true;
        work.push_back(c);
      }
    }
  };
  for (const auto& e : g.negation) raise(e.source, g.dist[e.target] + 1);
  while (!work.empty()) {
    edg::ConfigId t = work.front();
    work.pop_front();
    queued[t] = false;
    for (uint32_t ei : g.in_hyper[t]) raise(g.hyper[ei].source, g.dist[t]);
    for (uint32_t ei : g.in_neg[t]) raise(g.negation[ei].source, g.dist[t] + 1);
  }
  for (size_t c = 0; c < g.config_count; ++c)
    g.graph_dist = std::max(g.graph_dist, g.dist[c]);
  return g;
}

std::vector<std::vector<edg::ConfigId>> components(const Graph& g) {
  std::vector<std::vector<edg::ConfigId>> out(g.graph_dist + 1);
  for (size_t c = 0; c < g.config_count; ++c)
    for (int i = g.dist[c]; i <= g.graph_dist; ++i)
      out[i].push_back(static_cast<edg::ConfigId>(c));
  return out;
}

std::vector<uint8_t> solve_components(const Graph& g, SolveStats* stats) {
  std::vector<uint8_t> alpha(g.config_count, 0);
  std::vector<uint32_t> unresolved(g.hyper.size(), 0);
  std::deque<edg::ConfigId> newly_one;

  SolveStats local;
  auto assign_one = [&](edg::ConfigId c, int component) {
    if (alpha[c]) return;
    if (g.dist[c] < component) ++local.early_component_writes;
    alpha[c] = 1;
    ++local.value_flips;
    newly_one.push_back(c);
  };

  for (int i = 0; i <= g.graph_dist; ++i) {
    // Snapshot unresolved-target counts for this component's edges before any
    // value changes, so later decrements stay consistent.
    for (uint32_t ei = 0; ei < g.hyper.size(); ++ei) {
      const auto& e = g.hyper[ei];
      if (g.dist[e.source] != i) continue;
      uint32_t n = 0;
      for (edg::ConfigId t : e.targets)
        if (!alpha[t]) ++n;
      unresolved[ei] = n;
    }

    // Negation clause: targets live in K_{i-1} and are final.
    for (const auto& e : g.negation)
      if (g.dist[e.source] == i && alpha[e.target] == 0) assign_one(e.source, i);

    // Hyper edges whose conjunction already holds (empty set included).
    for (uint32_t ei = 0; ei < g.hyper.size(); ++ei) {
      const auto& e = g.hyper[ei];
      if (g.dist[e.source] == i && unresolved[ei] == 0) assign_one(e.source, i);
    }

    while (!newly_one.empty()) {
      edg::ConfigId c = newly_one.front();
      newly_one.pop_front();
      for (uint32_t ei : g.in_hyper[c]) {
        const auto& e = g.hyper[ei];
        if (g.dist[e.source] != i || alpha[e.source]) continue;
        assert(unresolved[ei] > 0);
        if (--unresolved[ei] == 0) assign_one(e.source, i);
      }
    }
  }
  if (stats) *stats = local;
  return alpha;
}

GlobalRun run_global(edg::Context& ctx, cgs::StateId q0, atl::FormulaId phi,
                     size_t max_configs) {
  GlobalRun run;
  edg::ConfigId root = ctx.configs.intern(q0, phi);
  run.graph = build_graph(ctx, root, max_configs);
  run.assignment = solve_components(run.graph, &run.stats);
  run.verdict = run.assignment[root] != 0;
  return run;
}

bool check_global(const cgs::GameStructure& game, atl::FormulaStore& formulas,
                  atl::FormulaId phi) {
  atl::FormulaId core = formulas.desugar(phi);
  edg::ConfigStore configs(game, formulas);
  edg::Context ctx{game, formulas, configs};
  return run_global(ctx, game.initial_state(), core).verdict;
}

}  // namespace cgmc::solver
