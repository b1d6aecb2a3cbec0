#include "cgmc/solver/local.hpp"

#include <atomic>
#include <cassert>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <set>
#include <thread>

#include "cgmc/error.hpp"
#include "cgmc/strat/search.hpp"

namespace cgmc::solver {

namespace {

constexpr uint32_t kNoEdge = UINT32_MAX;
constexpr int kReleaseAll = INT32_MAX;

struct Message {
  enum class Kind : uint8_t { Explore, Notify, Release, Quit } kind;
  edg::ConfigId cfg = 0;
  AssignVal value = AssignVal::Bottom;
  int level = 0;
  int from = -1;
  uint32_t req_edge = kNoEdge;
};

class Inbox {
 public:
  void push(Message m) {
    {
      std::lock_guard lock(mu_);
      q_.push_back(m);
    }
    cv_.notify_one();
  }
  bool try_pop(Message& out) {
    std::lock_guard lock(mu_);
    if (q_.empty()) return false;
    out = q_.front();
    q_.pop_front();
    return true;
  }
  void wait_briefly() {
    std::unique_lock lock(mu_);
    if (!q_.empty()) return;
    // wait_until on the system clock: the steady-clock overload ends up in
    // pthread_cond_clockwait, which thread sanitizers do not model.
    cv_.wait_until(lock,
                   std::chrono::system_clock::now() + std::chrono::microseconds(200));
  }
  void notify() { cv_.notify_all(); }

 private:
  std::mutex mu_;
  std::deque<Message> q_;
  std::condition_variable cv_;
};

struct EdgeRec {
  enum class State : uint8_t { Idle, Queued, Deferred, Done };
  edg::ConfigId source;
  std::vector<edg::ConfigId> targets;  // negation: exactly one
  std::optional<edg::PartialMove> pmove;
  bool negation = false;
  State state = State::Idle;
  int defer_level = 0;
};

struct OwnedConfig {
  AssignVal value = AssignVal::Bottom;
  bool expanded = false;
  int live_edges = 0;  // outgoing edges not yet removed
  uint32_t certifying_edge = kNoEdge;
  std::vector<uint32_t> out_edges;
  std::vector<int> interested;  // workers to notify on certainty
};

class LocalSolver;

class Worker {
 public:
  Worker(LocalSolver& solver, int id);
  void run();

  Inbox inbox;
  LocalStats stats;
  std::unordered_map<edg::ConfigId, OwnedConfig> owned;
  std::deque<EdgeRec> edges;  // stable references: expansion appends mid-call

 private:
  friend class LocalSolver;

  LocalSolver& solver_;
  int id_;
  std::unique_ptr<strat::SearchQueue> queue_;
  std::unordered_map<edg::ConfigId, AssignVal> known_;  // remote value cache
  std::unordered_map<edg::ConfigId, std::vector<uint32_t>> waiting_;

  void handle(const Message& m);
  void handle_explore(const Message& m);
  void handle_notify(const Message& m);
  void handle_release(int level);

  AssignVal value_of(edg::ConfigId c);
  OwnedConfig& ensure_owned(edg::ConfigId c);
  void expand(edg::ConfigId c, OwnedConfig& oc);
  void process_edge(uint32_t id);
  void process_hyper(uint32_t id, EdgeRec& e, OwnedConfig& oc);
  void process_negation(uint32_t id, EdgeRec& e, OwnedConfig& oc);
  void certify(edg::ConfigId c, OwnedConfig& oc, AssignVal v, uint32_t edge);
  void raise_value(edg::ConfigId c, OwnedConfig& oc, AssignVal v);
  void queue_push(uint32_t id);
  void wait_on(edg::ConfigId t, uint32_t edge_id);
  void requeue_waiting(edg::ConfigId c);
};

class LocalSolver {
 public:
  LocalSolver(const cgs::GameStructure& game, atl::FormulaStore& formulas,
              atl::FormulaId phi, const LocalOptions& opt)
      : game_(game),
        formulas_(formulas),
        options_(opt),
        configs_(game, formulas),
        ctx_{game, formulas, configs_},
        strategy_(opt.strategy, game, formulas, configs_) {
    original_ = phi;
    core_ = formulas.desugar(phi);
    root_ = configs_.intern(game.initial_state(), core_);
    strategy_.init_root(root_);
    levels_ = static_cast<size_t>(formulas.negation_depth(core_)) + 2;
    deferred_count_ = std::make_unique<std::atomic<long>[]>(levels_);
    for (size_t l = 0; l < levels_; ++l) deferred_count_[l].store(0);
  }

  LocalResult run();

  int owner_of(edg::ConfigId c) const {
    return static_cast<int>(configs_.config(c).content_hash %
                            static_cast<uint64_t>(options_.workers));
  }

  void send(int to, Message m) {
    in_flight_.fetch_add(1, std::memory_order_acq_rel);
    workers_[to]->inbox.push(m);
  }

  const cgs::GameStructure& game_;
  atl::FormulaStore& formulas_;
  LocalOptions options_;
  edg::ConfigStore configs_;
  edg::Context ctx_;
  strat::StrategyContext strategy_;

  atl::FormulaId original_ = 0;
  atl::FormulaId core_ = 0;
  edg::ConfigId root_ = 0;

  std::vector<std::unique_ptr<Worker>> workers_;
  std::atomic<long> in_flight_{0};
  std::atomic<int> verdict_{-1};
  std::atomic<bool> stop_{false};
  size_t levels_ = 0;
  std::unique_ptr<std::atomic<long>[]> deferred_count_;

  std::mutex error_mu_;
  std::optional<Error> first_error_;

  void record_error(const Error& e) {
    std::lock_guard lock(error_mu_);
    if (!first_error_) first_error_ = e;
    stop_.store(true);
    for (auto& w : workers_) w->inbox.notify();
  }

  void set_verdict(bool v) {
    int expected = -1;
    if (verdict_.compare_exchange_strong(expected, v ? 1 : 0)) {
      stop_.store(true);
      for (auto& w : workers_) w->inbox.notify();
    }
  }

 private:
  std::optional<Witness> extract_witness(std::string& note) const;
};

Worker::Worker(LocalSolver& solver, int id) : solver_(solver), id_(id) {
  queue_ = solver.strategy_.make_queue();
}

AssignVal Worker::value_of(edg::ConfigId c) {
  if (solver_.owner_of(c) == id_) {
    auto it = owned.find(c);
    return it == owned.end() ? AssignVal::Bottom : it->second.value;
  }
  auto it = known_.find(c);
  return it == known_.end() ? AssignVal::Bottom : it->second;
}

OwnedConfig& Worker::ensure_owned(edg::ConfigId c) {
  assert(solver_.owner_of(c) == id_);
  return owned[c];
}

void Worker::raise_value(edg::ConfigId c, OwnedConfig& oc, AssignVal v) {
  assert(solver_.owner_of(c) == id_);
  if (!lattice_upward(oc.value, v)) {
    ++stats.downward_transitions;
    assert(false && "assignment value moved downward");
  }
  oc.value = v;
}

void Worker::expand(edg::ConfigId c, OwnedConfig& oc) {
  oc.expanded = true;
  raise_value(c, oc, AssignVal::Unknown);
  ++stats.configs_explored;
  if (solver_.configs_.size() > solver_.options_.max_configs)
    throw Error(ErrorKind::Resource,
                "exploration exceeds " + std::to_string(solver_.options_.max_configs) +
                    " configurations");

  edg::EdgeSet es = edg::successors(c, solver_.ctx_);
  oc.live_edges = static_cast<int>(es.hyper.size() + es.negation.size());
  if (oc.live_edges == 0) {
    certify(c, oc, AssignVal::Zero, kNoEdge);  // no edges: disjunction of none
    return;
  }
  // An empty target set is an unconditionally true conjunction: certify at
  // discovery instead of queueing anything.
  for (auto& h : es.hyper) {
    if (h.targets.empty()) {
      uint32_t id = static_cast<uint32_t>(edges.size());
      edges.push_back(EdgeRec{h.source, {}, std::move(h.pmove), false,
                              EdgeRec::State::Done, 0});
      oc.out_edges.push_back(id);
      certify(c, oc, AssignVal::One, id);
      return;
    }
  }
  for (auto& h : es.hyper) {
    uint32_t id = static_cast<uint32_t>(edges.size());
    for (edg::ConfigId t : h.targets) {
      solver_.strategy_.note_in_edge(t);
      queue_->notify_new_in_edge(t);
    }
    edges.push_back(EdgeRec{h.source, std::move(h.targets), std::move(h.pmove),
                            false, EdgeRec::State::Idle, 0});
    oc.out_edges.push_back(id);
    queue_push(id);
  }
  for (const auto& ne : es.negation) {
    uint32_t id = static_cast<uint32_t>(edges.size());
    solver_.strategy_.note_in_edge(ne.target);
    queue_->notify_new_in_edge(ne.target);
    edges.push_back(EdgeRec{ne.source, {ne.target}, std::nullopt, true,
                            EdgeRec::State::Idle, 0});
    oc.out_edges.push_back(id);
    queue_push(id);
  }
}

void Worker::queue_push(uint32_t id) {
  EdgeRec& e = edges[id];
  if (e.state == EdgeRec::State::Queued || e.state == EdgeRec::State::Done) return;
  if (e.state == EdgeRec::State::Deferred)
    solver_.deferred_count_[e.defer_level].fetch_sub(1, std::memory_order_acq_rel);
  e.state = EdgeRec::State::Queued;
  solver_.in_flight_.fetch_add(1, std::memory_order_acq_rel);
  queue_->push(strat::EdgeView{id, e.source, e.negation, &e.targets});
}

void Worker::certify(edg::ConfigId c, OwnedConfig& oc, AssignVal v, uint32_t edge) {
  if (oc.value == v) return;
  raise_value(c, oc, v);
  if (v == AssignVal::One && edge != kNoEdge) oc.certifying_edge = edge;
  if (c == solver_.root_) solver_.set_verdict(v == AssignVal::One);
  for (int w : oc.interested) {
    ++stats.messages_sent;
    solver_.send(w, Message{Message::Kind::Notify, c, v, 0, id_, kNoEdge});
  }
  oc.interested.clear();
  requeue_waiting(c);
}

void Worker::requeue_waiting(edg::ConfigId c) {
  auto it = waiting_.find(c);
  if (it == waiting_.end()) return;
  std::vector<uint32_t> pending = std::move(it->second);
  waiting_.erase(it);
  for (uint32_t id : pending) queue_push(id);
}

void Worker::wait_on(edg::ConfigId t, uint32_t edge_id) {
  AssignVal v = value_of(t);
  if (v == AssignVal::Zero || v == AssignVal::One) {
    queue_push(edge_id);  // resolve on the next processing round
    return;
  }
  waiting_[t].push_back(edge_id);
  if (solver_.owner_of(t) == id_) {
    OwnedConfig& tc = ensure_owned(t);
    if (!tc.expanded) expand(t, tc);  // may certify and requeue immediately
  } else {
    auto [it, fresh] = known_.try_emplace(t, AssignVal::Unknown);
    if (fresh) {
      ++stats.messages_sent;
      solver_.send(solver_.owner_of(t),
                   Message{Message::Kind::Explore, t, AssignVal::Bottom, 0, id_,
                           edge_id});
    }
  }
}

void Worker::process_edge(uint32_t id) {
  EdgeRec& e = edges[id];
  if (e.state != EdgeRec::State::Queued) return;  // invalidated entry
  e.state = EdgeRec::State::Idle;
  ++stats.edges_processed;
  OwnedConfig& oc = ensure_owned(e.source);
  if (oc.value == AssignVal::Zero || oc.value == AssignVal::One) {
    e.state = EdgeRec::State::Done;
    return;
  }
  if (e.negation)
    process_negation(id, e, oc);
  else
    process_hyper(id, e, oc);
}

void Worker::process_hyper(uint32_t id, EdgeRec& e, OwnedConfig& oc) {
  bool dead = false;
  int unresolved = 0;
  for (edg::ConfigId t : e.targets) {
    AssignVal v = value_of(t);
    if (v == AssignVal::Zero) {
      dead = true;
      break;
    }
    if (v != AssignVal::One) ++unresolved;
  }
  if (dead) {
    // One certain-zero target kills the conjunction; drop the edge.
    e.state = EdgeRec::State::Done;
    if (--oc.live_edges == 0) certify(e.source, oc, AssignVal::Zero, kNoEdge);
    return;
  }
  if (unresolved == 0) {
    e.state = EdgeRec::State::Done;
    certify(e.source, oc, AssignVal::One, id);
    return;
  }
  for (edg::ConfigId t : e.targets) {
    AssignVal v = value_of(t);
    if (v == AssignVal::Zero || v == AssignVal::One) continue;
    wait_on(t, id);
  }
}

void Worker::process_negation(uint32_t id, EdgeRec& e, OwnedConfig& oc) {
  edg::ConfigId t = e.targets[0];
  AssignVal v = value_of(t);
  if (v == AssignVal::Zero) {
    e.state = EdgeRec::State::Done;
    certify(e.source, oc, AssignVal::One, id);
    return;
  }
  if (v == AssignVal::One) {
    e.state = EdgeRec::State::Done;
    if (--oc.live_edges == 0) certify(e.source, oc, AssignVal::Zero, kNoEdge);
    return;
  }
  // Target undetermined: defer until its exploration quiesces. The deferral
  // level is the negation depth of the source formula; everything strictly
  // below it is finalized before the edge is released.
  e.state = EdgeRec::State::Deferred;
  e.defer_level = solver_.configs_.config(e.source).dist;
  solver_.deferred_count_[e.defer_level].fetch_add(1, std::memory_order_acq_rel);
  wait_on(t, id);
  if (e.state == EdgeRec::State::Deferred && value_of(t) >= AssignVal::Zero)
    queue_push(id);  // certified while registering; resolve promptly
}

void Worker::handle_explore(const Message& m) {
  OwnedConfig& oc = ensure_owned(m.cfg);
  if (!oc.expanded) expand(m.cfg, oc);
  if (m.from >= 0) {
    if (oc.value == AssignVal::Zero || oc.value == AssignVal::One) {
      ++stats.messages_sent;
      solver_.send(m.from,
                   Message{Message::Kind::Notify, m.cfg, oc.value, 0, id_, kNoEdge});
    } else {
      for (int w : oc.interested)
        if (w == m.from) return;
      oc.interested.push_back(m.from);
    }
  }
}

void Worker::handle_notify(const Message& m) {
  auto it = known_.find(m.cfg);
  if (it == known_.end())
    known_.emplace(m.cfg, m.value);
  else
    it->second = m.value;
  requeue_waiting(m.cfg);
}

void Worker::handle_release(int level) {
  // Quiescence finalization: an explored-but-undetermined configuration
  // whose whole component has quiesced holds zero in the minimum fixed
  // point. Only configurations strictly below the released level qualify.
  std::vector<edg::ConfigId> to_zero;
  for (auto& [c, oc] : owned)
    if (oc.value == AssignVal::Unknown && solver_.configs_.config(c).dist < level)
      to_zero.push_back(c);
  for (edg::ConfigId c : to_zero) certify(c, owned.at(c), AssignVal::Zero, kNoEdge);
}

void Worker::handle(const Message& m) {
  switch (m.kind) {
    case Message::Kind::Explore:
      handle_explore(m);
      break;
    case Message::Kind::Notify:
      handle_notify(m);
      break;
    case Message::Kind::Release:
      handle_release(m.level);
      break;
    case Message::Kind::Quit:
      break;
  }
}

void Worker::run() {
  try {
    while (!solver_.stop_.load(std::memory_order_acquire)) {
      Message m;
      if (inbox.try_pop(m)) {
        handle(m);
        solver_.in_flight_.fetch_sub(1, std::memory_order_acq_rel);
        continue;
      }
      if (auto id = queue_->pop()) {
        process_edge(*id);
        solver_.in_flight_.fetch_sub(1, std::memory_order_acq_rel);
        continue;
      }
      inbox.wait_briefly();
    }
  } catch (const Error& e) {
    solver_.record_error(e);
  } catch (const std::exception& e) {
    solver_.record_error(Error(ErrorKind::Model, e.what()));
  }
}

LocalResult LocalSolver::run() {
  int w_count = options_.workers;
  if (w_count < 1) throw Error(ErrorKind::Unsupported, "worker count must be >= 1");
  for (int i = 0; i < w_count; ++i) workers_.push_back(std::make_unique<Worker>(*this, i));

  send(owner_of(root_), Message{Message::Kind::Explore, root_, AssignVal::Bottom, 0,
                                -1, kNoEdge});

  std::vector<std::thread> threads;
  threads.reserve(w_count);
  for (int i = 0; i < w_count; ++i)
    threads.emplace_back([this, i] { workers_[i]->run(); });

  uint64_t release_rounds = 0;
  while (!stop_.load(std::memory_order_acquire)) {
    if (in_flight_.load(std::memory_order_acquire) == 0) {
      // Global quiescence: nothing queued, nothing in flight.
      int level = -1;
      for (size_t l = 0; l < levels_; ++l)
        if (deferred_count_[l].load(std::memory_order_acquire) > 0) {
          level = static_cast<int>(l);
          break;
        }
      int released;
      if (level >= 0) {
        ++release_rounds;  // a round that re-queues deferred negation edges
        released = level;
      } else {
        released = kReleaseAll;
      }
      for (int i = 0; i < w_count; ++i)
        send(i, Message{Message::Kind::Release, 0, AssignVal::Bottom, released, -1,
                        kNoEdge});
      // After the final all-release the root collapses to certain zero,
      // which sets the verdict and stops the loop.
      while (in_flight_.load(std::memory_order_acquire) != 0 &&
             !stop_.load(std::memory_order_acquire))
        std::this_thread::yield();
      continue;
    }
    std::this_thread::sleep_for(std::chrono::microseconds(50));
  }

  stop_.store(true);
  for (auto& w : workers_) w->inbox.notify();
  for (auto& t : threads) t.join();

  {
    std::lock_guard lock(error_mu_);
    if (first_error_) throw *first_error_;
  }

  LocalResult result;
  assert(verdict_.load() >= 0);
  result.verdict = verdict_.load() == 1;
  for (const auto& w : workers_) {
    result.stats.configs_explored += w->stats.configs_explored;
    result.stats.edges_processed += w->stats.edges_processed;
    result.stats.messages_sent += w->stats.messages_sent;
    result.stats.downward_transitions += w->stats.downward_transitions;
  }
  result.stats.release_rounds = release_rounds;
  // Early iff the run stopped with undiscovered frontier: configurations
  // were interned as edge targets but never expanded.
  result.stats.early_termination =
      result.stats.configs_explored < configs_.size();

  if (options_.want_witness) {
    std::string note;
    result.witness = extract_witness(note);
    result.witness_note = note;
  }
  return result;
}

std::optional<Witness> LocalSolver::extract_witness(std::string& note) const {
  const atl::Node& top = formulas_.node(original_);
  bool supported = top.kind == atl::Kind::EnforceNext ||
                   top.kind == atl::Kind::EnforceUntil ||
                   top.kind == atl::Kind::EnforceEventually;
  if (!supported) {
    note = "witness unavailable: only enforce next/until/eventually formulas "
           "have strategy witnesses";
    return std::nullopt;
  }
  if (verdict_.load() != 1) {
    note = "witness unavailable: property not satisfied";
    return std::nullopt;
  }

  auto owned_of = [&](edg::ConfigId c) -> const OwnedConfig& {
    return workers_[owner_of(c)]->owned.at(c);
  };
  auto edge_of = [&](edg::ConfigId c, uint32_t id) -> const EdgeRec& {
    return workers_[owner_of(c)]->edges[id];
  };

  Witness w;
  w.formula = formulas_.to_string(original_, &game_);
  std::vector<edg::ConfigId> stack{root_};
  std::set<edg::ConfigId> visited;
  while (!stack.empty()) {
    edg::ConfigId c = stack.back();
    stack.pop_back();
    if (!visited.insert(c).second) continue;
    const OwnedConfig& oc = owned_of(c);
    assert(oc.value == AssignVal::One);
    if (oc.certifying_edge == kNoEdge) continue;  // certified via phi2 leaf
    const EdgeRec& e = edge_of(c, oc.certifying_edge);
    edg::Config cfg = configs_.config(c);
    if (e.pmove) {
      WitnessEntry entry;
      entry.state = cfg.state;
      for (size_t a = 0; a < e.pmove->fixed.size(); ++a) {
        if (e.pmove->fixed[a] == 0) continue;
        entry.moves.push_back(WitnessMove{
            static_cast<int>(a), e.pmove->fixed[a],
            game_.move_name(cfg.state, static_cast<int>(a), e.pmove->fixed[a])});
      }
      if (!entry.moves.empty()) w.entries.push_back(std::move(entry));
      // Recurse into successor configurations carrying the same formula.
      for (edg::ConfigId t : e.targets)
        if (configs_.config(t).formula == cfg.formula && t != c) stack.push_back(t);
    }
    // Edges without a partial move are the "phi2 now" branch: path complete.
  }
  return w;
}

}  // namespace

LocalResult check_local(const cgs::GameStructure& game, atl::FormulaStore& formulas,
                        atl::FormulaId phi, const LocalOptions& options) {
  LocalSolver solver(game, formulas, phi, options);
  return solver.run();
}

}  // namespace cgmc::solver
