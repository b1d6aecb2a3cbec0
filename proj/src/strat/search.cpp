#include "cgmc/strat/search.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <set>

#include "cgmc/error.hpp"

namespace cgmc::strat {

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names = {"bfs", "dfs", "dhs",
                                                 "ihs", "lps", "lrs"};
  return names;
}

bool is_strategy_name(const std::string& name) {
  const auto& n = strategy_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

namespace {

class BfsQueue : public SearchQueue {
 public:
  void push(const EdgeView& e) override { q_.push_back(e.id); }
  std::optional<uint32_t> pop() override {
    if (q_.empty()) return std::nullopt;
    uint32_t id = q_.front();
    q_.pop_front();
    return id;
  }
  bool empty() const override { return q_.empty(); }

 private:
  std::deque<uint32_t> q_;
};

class DfsQueue : public SearchQueue {
 public:
  void push(const EdgeView& e) override { q_.push_back(e.id); }
  std::optional<uint32_t> pop() override {
    if (q_.empty()) return std::nullopt;
    uint32_t id = q_.back();
    q_.pop_back();
    return id;
  }
  bool empty() const override { return q_.empty(); }

 private:
  std::vector<uint32_t> q_;
};

/// Min-heap on (priority, fifo sequence). Strategies that rank "best first"
/// by a bigger score push the negated score.
class PriorityQueue : public SearchQueue {
 public:
  void push_scored(uint32_t id, edg::ConfigId source, double prio) {
    heap_.push(Entry{prio, seq_++, id, source});
  }
  std::optional<uint32_t> pop() override {
    if (heap_.empty()) return std::nullopt;
    Entry e = heap_.top();
    heap_.pop();
    return e.id;
  }
  bool empty() const override { return heap_.empty(); }

 protected:
  struct Entry {
    double prio;
    uint64_t seq;
    uint32_t id;
    edg::ConfigId source;
  };
  struct Cmp {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.prio != b.prio) return a.prio > b.prio;
      return a.seq > b.seq;  // FIFO among equal priorities
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Cmp> heap_;
  uint64_t seq_ = 0;
};

/// Highest in-degree of the source first, FIFO among equal priorities. When
/// new in-edges are discovered the affected entries are re-inserted with the
/// fresh count (keeping their arrival order), so the priority an edge is
/// popped with always reflects the current in-degree.
class DhsQueue : public SearchQueue {
 public:
  explicit DhsQueue(const StrategyContext& ctx) : ctx_(ctx) {}

  void push(const EdgeView& e) override {
    uint64_t seq = seq_++;
    alive_[e.id] = {e.source, seq};
    by_source_[e.source].insert(e.id);
    heap_.push(Entry{-static_cast<double>(ctx_.indegree(e.source)), seq, e.id,
                     ++version_[e.id]});
  }

  void notify_new_in_edge(edg::ConfigId c) override {
    auto it = by_source_.find(c);
    if (it == by_source_.end()) return;
    double prio = -static_cast<double>(ctx_.indegree(c));
    for (uint32_t id : it->second)
      heap_.push(Entry{prio, alive_[id].second, id, ++version_[id]});
  }

  std::optional<uint32_t> pop() override {
    while (!heap_.empty()) {
      Entry e = heap_.top();
      heap_.pop();
      auto it = alive_.find(e.id);
      if (it == alive_.end() || version_[e.id] != e.version) continue;  // stale
      // In-degree bumps from other workers arrive without a notify here;
      // re-read the count and reinsert when it grew.
      double current = -static_cast<double>(ctx_.indegree(it->second.first));
      if (current < e.prio) {
        heap_.push(Entry{current, e.seq, e.id, ++version_[e.id]});
        continue;
      }
      by_source_[it->second.first].erase(e.id);
      alive_.erase(it);
      return e.id;
    }
    return std::nullopt;
  }

  bool empty() const override { return alive_.empty(); }

 private:
  struct Entry {
    double prio;
    uint64_t seq;
    uint32_t id;
    uint64_t version;
  };
  struct Cmp {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.prio != b.prio) return a.prio > b.prio;
      return a.seq > b.seq;
    }
  };

  const StrategyContext& ctx_;
  std::priority_queue<Entry, std::vector<Entry>, Cmp> heap_;
  std::unordered_map<uint32_t, std::pair<edg::ConfigId, uint64_t>> alive_;
  std::unordered_map<uint32_t, uint64_t> version_;
  std::unordered_map<edg::ConfigId, std::set<uint32_t>> by_source_;
  uint64_t seq_ = 0;
};

class IhsQueue : public PriorityQueue {
 public:
  explicit IhsQueue(const StrategyContext& ctx) : ctx_(ctx) {}
  void push(const EdgeView& e) override {
    long d = ctx_.ihs_distance(e);
    push_scored(e.id, e.source, static_cast<double>(d < 0 ? -d : d));
  }

 private:
  const StrategyContext& ctx_;
};

class LpsQueue : public PriorityQueue {
 public:
  explicit LpsQueue(const StrategyContext& ctx) : ctx_(ctx) {}
  void push(const EdgeView& e) override {
    push_scored(e.id, e.source, ctx_.lps_distance(e.source));
  }

 private:
  const StrategyContext& ctx_;
};

class LrsQueue : public PriorityQueue {
 public:
  explicit LrsQueue(const StrategyContext& ctx) : ctx_(ctx) {}
  void push(const EdgeView& e) override {
    push_scored(e.id, e.source, ctx_.lrs_distance(e.source));
  }

 private:
  const StrategyContext& ctx_;
};

}  // namespace

StrategyContext::StrategyContext(std::string name, const cgs::GameStructure& game,
                                 const atl::FormulaStore& formulas,
                                 const edg::ConfigStore& configs)
    : name_(std::move(name)), game_(game), formulas_(formulas), configs_(configs) {
  if (!is_strategy_name(name_))
    throw Error(ErrorKind::Unsupported, "unknown search strategy '" + name_ + "'");
}

void StrategyContext::init_root(edg::ConfigId root) {
  if (name_ != "lrs") return;
  edg::Config cfg = configs_.config(root);
  const auto& systems = constraints_for(cfg.formula);
  auto vals = game_.state_values(cfg.state);
  Eigen::VectorXd q(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) q(static_cast<int>(i)) = vals[i];
  int n = game_.var_count();
  Eigen::VectorXd lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    auto [l, h] = game_.var_range(i);
    lo(i) = l;
    hi(i) = h;
  }
  double best = std::numeric_limits<double>::infinity();
  std::optional<Eigen::VectorXd> target;
  for (const auto& sys : systems) {
    LpResult r = lp_solve(sys.C, sys.b, q, n > 0 ? &lo : nullptr, n > 0 ? &hi : nullptr);
    if (r.status == LpResult::Status::Optimal && r.value < best) {
      best = r.value;
      target = r.s;
    }
  }
  lrs_target_ = target;  // nullopt -> bfs fallback
}

std::unique_ptr<SearchQueue> StrategyContext::make_queue() const {
  if (name_ == "bfs") return std::make_unique<BfsQueue>();
  if (name_ == "dfs") return std::make_unique<DfsQueue>();
  if (name_ == "dhs") return std::make_unique<DhsQueue>(*this);
  if (name_ == "ihs") return std::make_unique<IhsQueue>(*this);
  if (name_ == "lps") return std::make_unique<LpsQueue>(*this);
  if (name_ == "lrs") {
    if (!lrs_active()) return std::make_unique<BfsQueue>();
    return std::make_unique<LrsQueue>(*this);
  }
  throw Error(ErrorKind::Unsupported, "unknown search strategy '" + name_ + "'");
}

void StrategyContext::note_in_edge(edg::ConfigId c) {
  std::unique_lock lock(indeg_mu_);
  ++indegree_[c];
}

long StrategyContext::indegree(edg::ConfigId c) const {
  std::shared_lock lock(indeg_mu_);
  auto it = indegree_.find(c);
  return it == indegree_.end() ? 0 : it->second;
}

long StrategyContext::ihs_distance(const EdgeView& e) const {
  if (e.negation) {
    edg::Config t = configs_.config((*e.targets)[0]);
    BiDist d = bidist(game_, formulas_, t.state, t.formula);
    return d.f < 0 ? d.f : d.t;
  }
  if (e.targets->empty()) return 0;  // fires immediately; take it first
  bool first = true;
  BiDist acc{0, 0};
  for (edg::ConfigId tid : *e.targets) {
    edg::Config t = configs_.config(tid);
    BiDist d = bidist(game_, formulas_, t.state, t.formula);
    acc = first ? d : meet(acc, d);
    first = false;
  }
  return acc.t > 0 ? acc.t : acc.f;
}

const std::vector<LinearSystem>& StrategyContext::constraints_for(
    atl::FormulaId f) const {
  // Callers hold lp_mu_ or run single-threaded (init_root).
  auto it = systems_.find(f);
  if (it != systems_.end()) return it->second;
  auto [jt, ok] = systems_.emplace(f, extract_constraints(game_, formulas_, f));
  return jt->second;
}

double StrategyContext::lps_distance(edg::ConfigId source) const {
  edg::Config cfg = configs_.config(source);
  uint64_t key = (static_cast<uint64_t>(cfg.state) << 32) | cfg.formula;
  std::lock_guard lock(lp_mu_);
  auto it = lps_memo_.find(key);
  if (it != lps_memo_.end()) return it->second;

  const auto& systems = constraints_for(cfg.formula);
  double best = std::numeric_limits<double>::infinity();
  if (!systems.empty()) {
    auto vals = game_.state_values(cfg.state);
    Eigen::VectorXd q(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) q(static_cast<int>(i)) = vals[i];
    int n = game_.var_count();
    Eigen::VectorXd lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      auto [l, h] = game_.var_range(i);
      lo(i) = l;
      hi(i) = h;
    }
    for (const auto& sys : systems) {
      LpResult r = lp_solve(sys.C, sys.b, q, &lo, &hi);
      if (r.status == LpResult::Status::Optimal)
        best = std::min(best, r.value);
      // Infeasible pairs contribute nothing; numeric failures rank last.
    }
  }
  lps_memo_.emplace(key, best);
  return best;
}

double StrategyContext::lrs_distance(edg::ConfigId source) const {
  if (!lrs_target_) return 0;
  edg::Config cfg = configs_.config(source);
  auto vals = game_.state_values(cfg.state);
  double d = 0;
  for (size_t i = 0; i < vals.size(); ++i)
    d += std::abs((*lrs_target_)(static_cast<int>(i)) - vals[i]);
  return d;
}

}  // namespace cgmc::strat
