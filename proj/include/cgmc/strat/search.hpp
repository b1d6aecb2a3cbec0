#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>

#include "cgmc/edg/edg.hpp"
#include "cgmc/strat/bidist.hpp"
#include "cgmc/strat/constraints.hpp"

namespace cgmc::strat {

/// What a queue needs to know about an edge task.
struct EdgeView {
  uint32_t id;  // worker-local edge id
  edg::ConfigId source;
  bool negation;
  const std::vector<edg::ConfigId>* targets;
};

/// Edge-ordering policy of the local solver. One instance per worker; every
/// pushed edge is popped exactly once unless the worker drops it after
/// invalidation.
class SearchQueue {
 public:
  virtual ~SearchQueue() = default;
  virtual void push(const EdgeView& e) = 0;
  virtual std::optional<uint32_t> pop() = 0;
  virtual bool empty() const = 0;
  /// Hook for strategies with dynamic priorities; called when a discovered
  /// edge points at `c`.
  virtual void notify_new_in_edge(edg::ConfigId c) { (void)c; }
};

const std::vector<std::string>& strategy_names();  // bfs dfs dhs ihs lps lrs
bool is_strategy_name(const std::string& name);

/// Shared, read-mostly state for all workers of one check: in-degree counts
/// (dhs), the constraint and distance caches (lps), the root projection
/// (lrs). Queues are created per worker via make_queue().
class StrategyContext {
 public:
  StrategyContext(std::string name, const cgs::GameStructure& game,
                  const atl::FormulaStore& formulas, const edg::ConfigStore& configs);

  /// lrs solves its root linear program here; other strategies ignore it.
  void init_root(edg::ConfigId root);

  std::unique_ptr<SearchQueue> make_queue() const;
  const std::string& name() const { return name_; }

  // dhs
  void note_in_edge(edg::ConfigId c);
  long indegree(edg::ConfigId c) const;

  // ihs
  long ihs_distance(const EdgeView& e) const;

  // lps / lrs
  double lps_distance(edg::ConfigId source) const;
  double lrs_distance(edg::ConfigId source) const;
  bool lrs_active() const { return lrs_target_.has_value(); }

 private:
  const std::vector<LinearSystem>& constraints_for(atl::FormulaId f) const;

  std::string name_;
  const cgs::GameStructure& game_;
  const atl::FormulaStore& formulas_;
  const edg::ConfigStore& configs_;

  mutable std::shared_mutex indeg_mu_;
  std::unordered_map<edg::ConfigId, long> indegree_;

  mutable std::mutex lp_mu_;
  mutable std::unordered_map<atl::FormulaId, std::vector<LinearSystem>> systems_;
  mutable std::unordered_map<uint64_t, double> lps_memo_;  // (state, formula)

  std::optional<Eigen::VectorXd> lrs_target_;
};

}  // namespace cgmc::strat
