#include "support/random_cgs.hpp"

namespace cgmc::test {

std::unique_ptr<ExplicitGame> random_game(std::mt19937& rng, int states, int players,
                                          int max_moves, int props) {
  std::uniform_int_distribution<int> move_dist(1, max_moves);
  std::uniform_int_distribution<int> state_dist(0, states - 1);
  std::uniform_int_distribution<int> coin(0, 1);

  std::vector<std::vector<int>> moves(states, std::vector<int>(players));
  std::vector<std::vector<int>> delta(states);
  std::vector<std::vector<int>> labels(states);
  for (int q = 0; q < states; ++q) {
    size_t vectors = 1;
    for (int a = 0; a < players; ++a) {
      moves[q][a] = move_dist(rng);
      vectors *= static_cast<size_t>(moves[q][a]);
    }
    delta[q].resize(vectors);
    for (auto& t : delta[q]) t = state_dist(rng);
    for (int p = 0; p < props; ++p)
      if (coin(rng)) labels[q].push_back(p);
  }
  return std::make_unique<ExplicitGame>(players, props, std::move(moves),
                                        std::move(delta), std::move(labels), 0);
}

std::vector<atl::FormulaId> formula_templates(atl::FormulaStore& fs) {
  atl::PlayerSet none;
  atl::PlayerSet first;
  first.add(0);
  atl::PlayerSet second;
  second.add(1);
  atl::PlayerSet both;
  both.add(0);
  both.add(1);

  atl::FormulaId p = fs.mk_prop(0);
  atl::FormulaId q = fs.mk_prop(1);

  std::vector<atl::FormulaId> out;
  // The six core forms.
  out.push_back(p);
  out.push_back(fs.mk_not(p));
  out.push_back(fs.mk_or(p, q));
  out.push_back(fs.mk_enforce_next(first, p));
  out.push_back(fs.mk_enforce_until(first, p, q));
  out.push_back(fs.mk_despite_until(first, p, q));
  // Sugar forms.
  out.push_back(fs.mk_and(p, q));
  out.push_back(fs.mk_enforce_eventually(second, p));
  out.push_back(fs.mk_enforce_invariant(first, p));
  out.push_back(fs.mk_despite_next(second, p));
  out.push_back(fs.mk_despite_eventually(both, q));
  out.push_back(fs.mk_despite_invariant(second, p));
  // Coalition extremes.
  out.push_back(fs.mk_enforce_until(none, p, q));
  out.push_back(fs.mk_enforce_eventually(both, fs.mk_and(p, q)));
  // Depth-3 nestings mixing quantifiers and negation.
  out.push_back(fs.mk_not(fs.mk_enforce_eventually(first, fs.mk_and(p, q))));
  out.push_back(fs.mk_enforce_invariant(first, fs.mk_or(p, fs.mk_despite_next(second, q))));
  out.push_back(fs.mk_despite_until(both, fs.mk_not(p), fs.mk_enforce_next(first, q)));
  out.push_back(fs.mk_enforce_until(second, fs.mk_or(p, q), fs.mk_not(fs.mk_and(p, q))));
  return out;
}

}  // namespace cgmc::test
