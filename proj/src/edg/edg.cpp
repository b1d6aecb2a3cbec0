#include "cgmc/edg/edg.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <set>
#include <sstream>

#include "cgmc/error.hpp"

namespace cgmc::edg {

std::vector<PartialMove> pmoves(const cgs::GameStructure& game, cgs::StateId q,
                                atl::PlayerSet A) {
  int k = game.player_count();
  std::vector<int> members = A.members();
  std::vector<int> d(members.size());
  for (size_t i = 0; i < members.size(); ++i) d[i] = game.move_count(q, members[i]);

  std::vector<PartialMove> out;
  PartialMove v;
  v.fixed.assign(k, 0);
  if (members.empty()) {
    out.push_back(v);
    return out;
  }
  std::vector<int> idx(members.size(), 1);
  for (;;) {
    for (size_t i = 0; i < members.size(); ++i) v.fixed[members[i]] = idx[i];
    out.push_back(v);
    int i = static_cast<int>(members.size()) - 1;
    while (i >= 0) {
      if (idx[i] < d[i]) {
        ++idx[i];
        break;
      }
      idx[i] = 1;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::vector<cgs::MoveVector> expand_pmove(const cgs::GameStructure& game,
                                          cgs::StateId q, const PartialMove& V) {
  int k = game.player_count();
  std::vector<int> d(k);
  for (int a = 0; a < k; ++a)
    d[a] = V.fixed[a] != 0 ? 1 : game.move_count(q, a);
  std::vector<cgs::MoveVector> out;
  cgs::MoveVector v(k);
  std::vector<int> pos(k, 1);
  for (;;) {
    for (int a = 0; a < k; ++a) v[a] = V.fixed[a] != 0 ? V.fixed[a] : pos[a];
    out.push_back(v);
    int a = k - 1;
    while (a >= 0) {
      if (pos[a] < d[a]) {
        ++pos[a];
        break;
      }
      pos[a] = 1;
      --a;
    }
    if (a < 0) break;
  }
  return out;
}

std::vector<cgs::StateId> partial_transition(const cgs::GameStructure& game,
                                             cgs::StateId q, const PartialMove& V) {
  std::vector<cgs::StateId> out;
  for (const auto& v : expand_pmove(game, q, V)) out.push_back(game.transition(q, v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConfigId ConfigStore::intern(cgs::StateId state, atl::FormulaId formula,
                             std::optional<PartialMove> pmove) {
  Key key;
  key.state = state;
  key.formula = formula;
  key.has_pmove = pmove.has_value();
  if (pmove) key.pmove = pmove->fixed;
  {
    std::shared_lock lock(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
  }
  // Content hash over state values (not ids) keeps worker partitioning
  // stable across runs regardless of interning order.
  uint64_t h = 1469598103934665603ULL;
  auto mix = [&](uint64_t x) {
    h ^= x;
    h *= 1099511628211ULL;
  };
  for (int v : game_.state_values(state)) mix(static_cast<uint64_t>(static_cast<uint32_t>(v)));
  mix(0x51ed270b);
  mix(formula);
  if (pmove)
    for (int v : pmove->fixed) mix(static_cast<uint64_t>(v) + 0x9e3779b9);

  std::unique_lock lock(mu_);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  ConfigId id = static_cast<ConfigId>(rows_.size());
  rows_.push_back(Config{state, formula, std::move(pmove), h,
                         formulas_.negation_depth(formula)});
  index_.emplace(std::move(key), id);
  return id;
}

Config ConfigStore::config(ConfigId id) const {
  std::shared_lock lock(mu_);
  return rows_[id];
}

size_t ConfigStore::size() const {
  std::shared_lock lock(mu_);
  return rows_.size();
}

bool ConfigStore::content_less(ConfigId a, ConfigId b) const {
  std::shared_lock lock(mu_);
  const Config& x = rows_[a];
  const Config& y = rows_[b];
  if (x.state != y.state) return x.state < y.state;
  if (x.formula != y.formula) return x.formula < y.formula;
  bool xp = x.pmove.has_value(), yp = y.pmove.has_value();
  if (xp != yp) return !xp;
  if (xp) return x.pmove->fixed < y.pmove->fixed;
  return false;
}

std::string ConfigStore::describe(ConfigId id) const {
  const Config c = config(id);
  std::ostringstream os;
  os << "<" << game_.describe_state(c.state);
  if (c.pmove) {
    os << ", {";
    bool first = true;
    for (size_t a = 0; a < c.pmove->fixed.size(); ++a) {
      if (c.pmove->fixed[a] == 0) continue;
      if (!first) os << ",";
      first = false;
      os << game_.player_name(static_cast<int>(a)) << ":"
         << game_.move_name(c.state, static_cast<int>(a), c.pmove->fixed[a]);
    }
    os << "}";
  }
  os << ", " << formulas_.to_string(c.formula, &game_) << ">";
  return os.str();
}

namespace {

bool prop_holds(const cgs::GameStructure& game, cgs::StateId q, int prop) {
  auto labels = game.labels(q);
  return std::binary_search(labels.begin(), labels.end(), prop);
}

void sort_and_dedup_targets(std::vector<ConfigId>& targets, const ConfigStore& cs) {
  std::sort(targets.begin(), targets.end(),
            [&](ConfigId a, ConfigId b) { return cs.content_less(a, b); });
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
}

/// Appends the edge unless an identical target set is already present.
void add_hyper(EdgeSet& out, const ConfigStore& cs, ConfigId source,
               std::vector<ConfigId> targets, std::optional<PartialMove> pmove) {
  sort_and_dedup_targets(targets, cs);
  for (const auto& e : out.hyper)
    if (e.targets == targets) return;
  out.hyper.push_back(HyperEdge{source, std::move(targets), std::move(pmove)});
}

}  // namespace

EdgeSet successors(ConfigId c, Context& ctx) {
  const Config cfg = ctx.configs.config(c);
  const atl::Node& n = ctx.formulas.node(cfg.formula);
  EdgeSet out;

  if (cfg.pmove) {
    // Partially moved despite-until: one single-target edge per move vector.
    assert(n.kind == atl::Kind::DespiteUntil);
    for (const auto& v : expand_pmove(ctx.game, cfg.state, *cfg.pmove)) {
      cgs::StateId s = ctx.game.transition(cfg.state, v);
      add_hyper(out, ctx.configs, c, {ctx.configs.intern(s, cfg.formula)},
                std::nullopt);
    }
    return out;
  }

  switch (n.kind) {
    case atl::Kind::True:
      out.hyper.push_back(HyperEdge{c, {}, std::nullopt});
      return out;

    case atl::Kind::Prop:
      if (prop_holds(ctx.game, cfg.state, n.prop))
        out.hyper.push_back(HyperEdge{c, {}, std::nullopt});
      return out;

    case atl::Kind::Not:
      out.negation.push_back(
          NegationEdge{c, ctx.configs.intern(cfg.state, n.a)});
      return out;

    case atl::Kind::Or:
      add_hyper(out, ctx.configs, c, {ctx.configs.intern(cfg.state, n.a)},
                std::nullopt);
      add_hyper(out, ctx.configs, c, {ctx.configs.intern(cfg.state, n.b)},
                std::nullopt);
      return out;

    case atl::Kind::EnforceNext:
      for (const auto& V : pmoves(ctx.game, cfg.state, n.players)) {
        std::vector<ConfigId> targets;
        for (cgs::StateId s : partial_transition(ctx.game, cfg.state, V))
          targets.push_back(ctx.configs.intern(s, n.a));
        add_hyper(out, ctx.configs, c, std::move(targets), V);
      }
      return out;

    case atl::Kind::EnforceUntil: {
      // Unfolding edges first, the "phi2 holds now" edge last: stack-ordered
      // strategies then try the goal check before diving deeper.
      ConfigId phi1 = ctx.configs.intern(cfg.state, n.a);
      for (const auto& V : pmoves(ctx.game, cfg.state, n.players)) {
        std::vector<ConfigId> targets{phi1};
        for (cgs::StateId s : partial_transition(ctx.game, cfg.state, V))
          targets.push_back(ctx.configs.intern(s, cfg.formula));
        add_hyper(out, ctx.configs, c, std::move(targets), V);
      }
      add_hyper(out, ctx.configs, c, {ctx.configs.intern(cfg.state, n.b)},
                std::nullopt);
      return out;
    }

    case atl::Kind::DespiteUntil: {
      std::vector<ConfigId> targets{ctx.configs.intern(cfg.state, n.a)};
      for (const auto& V : pmoves(ctx.game, cfg.state, n.players))
        targets.push_back(ctx.configs.intern(cfg.state, cfg.formula, V));
      add_hyper(out, ctx.configs, c, std::move(targets), std::nullopt);
      add_hyper(out, ctx.configs, c, {ctx.configs.intern(cfg.state, n.b)},
                std::nullopt);
      return out;
    }

    default:
      throw Error(ErrorKind::Unsupported,
                  "EDG encoding requires core-form formulas (found sugar node)");
  }
}

}  // namespace cgmc::edg
