#include "cgmc/cgs/lcgs_game.hpp"

#include <cassert>

namespace cgmc::cgs {

LcgsGame::LcgsGame(lcgs::CompiledGame game) : game_(std::move(game)) {
  initial_ = states_.intern(game_.initial);
}

std::optional<int> LcgsGame::find_prop(const std::string& name) const {
  auto it = game_.label_index.find(name);
  if (it == game_.label_index.end()) return std::nullopt;
  return it->second;
}

std::optional<int> LcgsGame::find_player(const std::string& name) const {
  auto it = game_.player_index.find(name);
  if (it == game_.player_index.end()) return std::nullopt;
  return it->second;
}

LcgsGame::StateInfo& LcgsGame::info(StateId q) const {
  {
    std::lock_guard lock(cache_mu_);
    auto it = cache_.find(q);
    if (it != cache_.end()) return *it->second;
  }
  auto fresh = std::make_unique<StateInfo>();
  auto vals = states_.values(q);
  fresh->avail.resize(game_.players.size());
  for (size_t a = 0; a < game_.players.size(); ++a) {
    const auto& actions = game_.players[a].actions;
    for (size_t i = 0; i < actions.size(); ++i) {
      long ok;
      try {
        ok = actions[i].availability.eval(vals, nullptr);
      } catch (const Error& e) {
        throw Error(e.kind(), std::string(e.what()) + " while evaluating action '" +
                                  game_.players[a].name + "." + actions[i].name +
                                  "' in state " + describe_state(q));
      }
      if (ok != 0) fresh->avail[a].push_back(static_cast<int>(i));
    }
    if (fresh->avail[a].empty())
      throw Error(ErrorKind::Model, "player '" + game_.players[a].name +
                                        "' has no available action in state " +
                                        describe_state(q));
  }
  for (size_t l = 0; l < game_.labels.size(); ++l) {
    long v;
    try {
      v = game_.labels[l].expr.eval(vals, nullptr);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " while evaluating label '" +
                                game_.labels[l].qualified_name + "' in state " +
                                describe_state(q));
    }
    if (v != 0) fresh->labels.push_back(static_cast<int>(l));
  }
  std::lock_guard lock(cache_mu_);
  auto [it, inserted] = cache_.emplace(q, std::move(fresh));
  return *it->second;
}

int LcgsGame::move_count(StateId q, int player) const {
  return static_cast<int>(info(q).avail[player].size());
}

const std::vector<std::vector<int>>& LcgsGame::available_actions(StateId q) const {
  return info(q).avail;
}

StateId LcgsGame::apply_moves(StateId q, const std::vector<int>& taken) const {
  auto vals = states_.values(q);
  ActionCtx ctx{taken};
  std::vector<int> next(game_.vars.size());
  for (size_t s = 0; s < game_.vars.size(); ++s) {
    const auto& var = game_.vars[s];
    long v;
    try {
      v = var.update.eval(vals, &ctx);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " while updating '" +
                                var.qualified_name + "' in state " +
                                describe_state(q));
    }
    if (v < var.lo || v > var.hi)
      throw Error(ErrorKind::Model,
                  "update of '" + var.qualified_name + "' evaluates to " +
                      std::to_string(v) + " outside [" + std::to_string(var.lo) +
                      ".." + std::to_string(var.hi) + "] in state " +
                      describe_state(q));
    next[s] = static_cast<int>(v);
  }
  return states_.intern(next);
}

const std::vector<StateId>& LcgsGame::successor_table(StateId q) const {
  StateInfo& si = info(q);
  {
    std::lock_guard lock(cache_mu_);
    if (si.successors) return *si.successors;
  }
  const auto& avail = si.avail;
  int k = player_count();
  size_t total = 1;
  for (int a = 0; a < k; ++a) total *= avail[a].size();
  auto table = std::make_unique<std::vector<StateId>>();
  table->reserve(total);
  std::vector<int> move(k, 0);  // 0-based position into avail lists
  std::vector<int> taken(k);
  for (;;) {
    for (int a = 0; a < k; ++a) taken[a] = avail[a][move[a]];
    table->push_back(apply_moves(q, taken));
    int a = k - 1;
    while (a >= 0) {
      if (move[a] + 1 < static_cast<int>(avail[a].size())) {
        ++move[a];
        break;
      }
      move[a] = 0;
      --a;
    }
    if (a < 0) break;
  }
  std::lock_guard lock(cache_mu_);
  if (!si.successors) si.successors = std::move(table);
  return *si.successors;
}

StateId LcgsGame::transition(StateId q, const MoveVector& v) const {
  const StateInfo& si = info(q);
  const auto& table = successor_table(q);
  int k = player_count();
  assert(static_cast<int>(v.size()) == k);
  size_t idx = 0;
  for (int a = 0; a < k; ++a) {
    assert(v[a] >= 1 && v[a] <= static_cast<int>(si.avail[a].size()));
    idx = idx * si.avail[a].size() + static_cast<size_t>(v[a] - 1);
  }
  return table[idx];
}

std::vector<int> LcgsGame::labels(StateId q) const { return info(q).labels; }

std::string LcgsGame::move_name(StateId q, int player, int move) const {
  const auto& avail = info(q).avail[player];
  assert(move >= 1 && move <= static_cast<int>(avail.size()));
  return game_.players[player].actions[avail[move - 1]].name;
}

}  // namespace cgmc::cgs
