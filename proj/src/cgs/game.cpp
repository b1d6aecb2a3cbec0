#include "cgmc/cgs/game.hpp"

#include <mutex>
#include <sstream>

namespace cgmc::cgs {

StateId StateStore::intern(const std::vector<int>& values) {
  {
    std::shared_lock lock(mu_);
    auto it = index_.find(values);
    if (it != index_.end()) return it->second;
  }
  std::unique_lock lock(mu_);
  auto [it, inserted] = index_.emplace(values, static_cast<StateId>(rows_.size()));
  if (inserted) rows_.push_back(&it->first);
  return it->second;
}

std::span<const int> StateStore::values(StateId id) const {
  std::shared_lock lock(mu_);
  return std::span<const int>(*rows_[id]);
}

size_t StateStore::size() const {
  std::shared_lock lock(mu_);
  return rows_.size();
}

std::string GameStructure::describe_state(StateId q) const {
  std::ostringstream os;
  os << '(';
  auto vals = state_values(q);
  for (int i = 0; i < var_count(); ++i) {
    if (i) os << ',';
    os << var_name(i) << '=' << vals[i];
  }
  os << ')';
  return os.str();
}

long eval_expr(const GameStructure& game, StateId q, const Expr& e) {
  return e.eval(game.state_values(q), nullptr);
}

std::vector<MoveVector> move_vectors(const GameStructure& game, StateId q) {
  int k = game.player_count();
  std::vector<int> d(k);
  size_t total = 1;
  for (int a = 0; a < k; ++a) {
    d[a] = game.move_count(q, a);
    total *= static_cast<size_t>(d[a]);
  }
  std::vector<MoveVector> out;
  out.reserve(total);
  MoveVector v(k, 1);
  for (;;) {
    out.push_back(v);
    int a = k - 1;
    while (a >= 0) {
      if (v[a] < d[a]) {
        ++v[a];
        break;
      }
      v[a] = 1;
      --a;
    }
    if (a < 0) break;
  }
  return out;
}

}  // namespace cgmc::cgs
