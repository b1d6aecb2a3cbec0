#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "cgmc/cgs/lcgs_game.hpp"
#include "cgmc/lcgs/compiler.hpp"
#include "support/oracle.hpp"
#include "support/random_cgs.hpp"

using namespace cgmc;
using namespace cgmc::test;

namespace {

std::string read_model(const std::string& name) {
  std::ifstream in(std::string(CGMC_MODELS_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("true is satisfied by every state") {
  std::mt19937 rng(10);
  auto game = random_game(rng, 6, 2, 3, 2);
  atl::FormulaStore fs;
  auto en = oracle::enumerate(*game);
  auto sat = oracle::sat_set(*game, fs, fs.mk_true(), en);
  for (bool b : sat) CHECK(b);
}

TEST_CASE("a held proposition is satisfied, the enforced invariant is not") {
  cgs::LcgsGame game(lcgs::compile(read_model("standoff.lcgs")));
  atl::FormulaStore fs;
  auto en = oracle::enumerate(game);

  auto alive = game.find_prop("billy.alive");
  auto billy = game.find_player("billy");
  REQUIRE(alive);
  REQUIRE(billy);
  auto sat_alive = oracle::sat_set(game, fs, fs.mk_prop(*alive), en);
  CHECK(sat_alive[en.index.at(game.initial_state())]);

  atl::PlayerSet A;
  A.add(*billy);
  atl::FormulaId box = fs.desugar(fs.mk_enforce_invariant(A, fs.mk_prop(*alive)));
  auto sat_box = oracle::sat_set(game, fs, box, en);
  CHECK(!sat_box[en.index.at(game.initial_state())]);
}

TEST_CASE("a one-state self-loop with p satisfies the eventuality") {
  ExplicitGame game(2, 1, {{1, 1}}, {{0}}, {{0}});
  atl::FormulaStore fs;
  auto en = oracle::enumerate(game);
  atl::FormulaId f = fs.desugar(fs.mk_enforce_eventually(atl::PlayerSet{}, fs.mk_prop(0)));
  CHECK(oracle::sat_set(game, fs, f, en)[0]);
}

TEST_CASE("outcomes with a full coalition follow one path") {
  std::mt19937 rng(77);
  auto game = random_game(rng, 5, 2, 3, 2);
  auto en = oracle::enumerate(*game);
  oracle::StrategyProfile z;
  for (int a : {0, 1}) {
    z.moves[a].assign(en.states.size(), 1);
    for (size_t i = 0; i < en.states.size(); ++i)
      z.moves[a][i] = 1 + static_cast<int>(i) % game->move_count(en.states[i], a);
  }
  auto prefixes = oracle::outcomes(*game, game->initial_state(), z, 4, en);
  CHECK(prefixes.size() == 1);
}

TEST_CASE("outcomes with no coalition cover every path") {
  ExplicitGame game(2, 0, {{2, 2}, {1, 1}, {1, 1}, {1, 1}},
                    {{1, 2, 3, 0}, {1}, {2}, {3}}, {{}, {}, {}, {}});
  auto en = oracle::enumerate(game);
  auto prefixes = oracle::outcomes(game, 0, oracle::StrategyProfile{}, 1, en);
  CHECK(prefixes.size() == 4);  // one per joint move
}

TEST_CASE("standoff outcomes: waiting billy sees the opponents' 81 combinations") {
  cgs::LcgsGame game(lcgs::compile(read_model("standoff.lcgs")));
  auto en = oracle::enumerate(game);
  auto billy = game.find_player("billy");
  REQUIRE(billy);
  oracle::StrategyProfile z;
  z.moves[*billy].assign(en.states.size(), 1);  // wait is the first action

  // Opponents choose freely: 9 joint moves per step, 81 over two steps.
  size_t per_step = 1;
  for (int a = 0; a < game.player_count(); ++a)
    if (a != *billy) per_step *= game.move_count(game.initial_state(), a);
  CHECK(per_step == 9);

  auto prefixes = oracle::outcomes(game, game.initial_state(), z, 2, en);
  CHECK(prefixes.size() <= 81);
  CHECK(prefixes.size() > 1);
  for (const auto& p : prefixes) REQUIRE(p.size() == 3);
}

TEST_CASE("a proposition holding at the state brute-forces to true") {
  ExplicitGame game(2, 1, {{1, 1}}, {{0}}, {{0}});
  atl::FormulaStore fs;
  auto en = oracle::enumerate(game);
  CHECK(oracle::brute_force_check(game, fs, fs.mk_prop(0), 0, en));
}

TEST_CASE("a full coalition can enforce a reachable next") {
  // Joint move (1,1) stays at 0 (no label), (2,... ) unavailable: craft
  // moves so some successor has p0 and the coalition can pick it.
  ExplicitGame game(2, 1, {{2, 2}, {1, 1}, {1, 1}, {1, 1}},
                    {{1, 2, 3, 0}, {1}, {2}, {3}}, {{}, {}, {0}, {}});
  atl::FormulaStore fs;
  auto en = oracle::enumerate(game);
  atl::PlayerSet both;
  both.add(0);
  both.add(1);
  // delta(0, (2,1)) = 2 which carries p0.
  CHECK(oracle::brute_force_check(game, fs, fs.mk_enforce_next(both, fs.mk_prop(0)),
                                  0, en));
}

TEST_CASE("sat_set and brute force agree on random tiny games") {
  std::mt19937 rng(2023);
  int checked = 0;
  for (int round = 0; round < 50; ++round) {
    auto game = random_game(rng, 4, 2, 2, 2);
    atl::FormulaStore fs;
    auto en = oracle::enumerate(*game);
    for (atl::FormulaId f : formula_templates(fs)) {
      atl::FormulaId core = fs.desugar(f);
      bool via_sets = oracle::sat_set(*game, fs, core, en)[0];
      bool via_profiles = oracle::brute_force_check(*game, fs, core, 0, en);
      CHECK_MESSAGE(via_sets == via_profiles, "round ", round, " formula ", f);
      ++checked;
    }
  }
  CHECK(checked >= 50 * 18);
}

TEST_CASE("profile explosion is reported as a resource error") {
  std::mt19937 rng(5);
  auto game = random_game(rng, 6, 2, 3, 2);
  atl::FormulaStore fs;
  auto en = oracle::enumerate(*game);
  atl::PlayerSet both;
  both.add(0);
  both.add(1);
  atl::FormulaId f = fs.mk_enforce_until(both, fs.mk_prop(0), fs.mk_prop(1));
  CHECK_THROWS_AS(oracle::brute_force_check(*game, fs, f, 0, en, 100), Error);
}
