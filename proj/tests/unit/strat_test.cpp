#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cgmc/cgs/lcgs_game.hpp"
#include "cgmc/lcgs/compiler.hpp"
#include "cgmc/strat/search.hpp"

using namespace cgmc;
using namespace cgmc::strat;

namespace {

/// One player, one variable x in [0..20] starting at 9, with labels defined
/// by single comparisons. Lets the heuristics see real expressions.
cgs::LcgsGame heuristic_game() {
  return cgs::LcgsGame(lcgs::compile(
      "template t\n"
      "  x : [0 .. 20] init 9;\n"
      "  x' = x;\n"
      "  label small = x < 5;\n"
      "  label positive = x > 0;\n"
      "  label big = x >= 15;\n"
      "  [w] 1;\n"
      "endtemplate\n"
      "player p = t [];"));
}

EdgeView view(uint32_t id, edg::ConfigId source, bool negation,
              const std::vector<edg::ConfigId>* targets) {
  return EdgeView{id, source, negation, targets};
}

}  // namespace

TEST_CASE("bfs pops in push order, dfs in reverse, empty pops are empty") {
  auto game = heuristic_game();
  atl::FormulaStore fs;
  edg::ConfigStore configs(game, fs);
  StrategyContext bfs_ctx("bfs", game, fs, configs);
  StrategyContext dfs_ctx("dfs", game, fs, configs);
  auto bfs = bfs_ctx.make_queue();
  auto dfs = dfs_ctx.make_queue();
  std::vector<edg::ConfigId> none;
  for (uint32_t id : {0u, 1u, 2u}) {
    bfs->push(view(id, 0, false, &none));
    dfs->push(view(id, 0, false, &none));
  }
  CHECK(*bfs->pop() == 0);
  CHECK(*bfs->pop() == 1);
  CHECK(*bfs->pop() == 2);
  CHECK(!bfs->pop().has_value());
  CHECK(*dfs->pop() == 2);
  CHECK(*dfs->pop() == 1);
  CHECK(*dfs->pop() == 0);
  CHECK(!dfs->pop().has_value());
}

TEST_CASE("dhs prefers high in-degree sources, FIFO on ties, and re-reads at pop") {
  auto game = heuristic_game();
  atl::FormulaStore fs;
  edg::ConfigStore configs(game, fs);
  cgs::StateId q = game.initial_state();
  edg::ConfigId a = configs.intern(q, fs.mk_prop(0));
  edg::ConfigId b = configs.intern(q, fs.mk_prop(1));
  edg::ConfigId c = configs.intern(q, fs.mk_prop(2));

  StrategyContext ctx("dhs", game, fs, configs);
  auto queue = ctx.make_queue();
  std::vector<edg::ConfigId> none;

  auto bump = [&](edg::ConfigId id) {
    ctx.note_in_edge(id);
    queue->notify_new_in_edge(id);
  };
  bump(a);
  bump(a);
  bump(a);
  bump(b);
  queue->push(view(10, b, false, &none));
  queue->push(view(11, a, false, &none));
  CHECK(*queue->pop() == 11);  // in-degree 3 beats 1

  // Equal priorities pop FIFO.
  queue->push(view(12, b, false, &none));
  queue->push(view(13, b, false, &none));
  CHECK(*queue->pop() == 10);
  CHECK(*queue->pop() == 12);

  // Priority growth after the push is visible at pop time.
  queue->push(view(14, c, false, &none));
  queue->push(view(15, b, false, &none));
  for (int i = 0; i < 5; ++i) bump(c);
  CHECK(*queue->pop() == 14);
  CHECK(*queue->pop() == 13);
  CHECK(*queue->pop() == 15);
}

TEST_CASE("bidist hand cases from the heuristic game") {
  auto game = heuristic_game();
  atl::FormulaStore fs;
  cgs::StateId q = game.initial_state();  // x = 9

  auto small = game.find_prop("p.small");  // x < 5
  REQUIRE(small);
  CHECK(bidist(game, fs, q, fs.mk_prop(*small)) == BiDist{4, 0});

  // health = 2, health > 0 on a second game.
  cgs::LcgsGame cowboy(lcgs::compile(
      "template t h : [0..2] init 2; h' = h; label alive = h > 0; [w] 1;\n"
      "endtemplate\nplayer p = t [];"));
  atl::FormulaStore fs2;
  auto alive = cowboy.find_prop("p.alive");
  REQUIRE(alive);
  CHECK(bidist(cowboy, fs2, cowboy.initial_state(), fs2.mk_prop(*alive)) ==
        BiDist{0, -2});

  // Negation swaps the components.
  CHECK(bidist(game, fs, q, fs.mk_not(fs.mk_prop(*small))) == BiDist{0, 4});
}

TEST_CASE("bidist truth sign: true comparisons have zero true-distance") {
  auto game = heuristic_game();
  atl::FormulaStore fs;
  for (int x = 0; x <= 20; ++x) {
    cgs::StateId q = game.state_from_values({x});
    for (const char* name : {"p.small", "p.positive", "p.big"}) {
      auto prop = game.find_prop(name);
      REQUIRE(prop);
      auto labels = game.labels(q);
      bool truth = std::binary_search(labels.begin(), labels.end(), *prop);
      BiDist d = bidist(game, fs, q, fs.mk_prop(*prop));
      if (truth) CHECK_MESSAGE(d.t == 0, name, " x=", x);
      // The falsity direction holds for non-strict comparisons; strict ones
      // sit at distance zero on their boundary by the case analysis.
      if (!truth && std::string(name) == "p.big")
        CHECK_MESSAGE(d.t > 0, name, " x=", x);
    }
  }
}

TEST_CASE("ihs edge distances follow the meet of the targets") {
  auto game = heuristic_game();
  atl::FormulaStore fs;
  edg::ConfigStore configs(game, fs);
  StrategyContext ctx("ihs", game, fs, configs);
  cgs::StateId q = game.initial_state();  // x = 9

  auto small = game.find_prop("p.small");
  auto alive_like = game.find_prop("p.positive");
  REQUIRE(small);
  REQUIRE(alive_like);

  // Hyper-edge with a single <4,0> target returns t = 4.
  std::vector<edg::ConfigId> t1{configs.intern(q, fs.mk_prop(*small))};
  CHECK(ctx.ihs_distance(view(0, 0, false, &t1)) == 4);

  // Single <0,-9> target: t = 0, so f = -9 is returned.
  std::vector<edg::ConfigId> t2{configs.intern(q, fs.mk_prop(*alive_like))};
  CHECK(ctx.ihs_distance(view(1, 0, false, &t2)) == -9);

  // Negation edge with f < 0 returns f.
  CHECK(ctx.ihs_distance(view(2, 0, true, &t2)) == -9);

  // Meet adds true-distances and takes the minimum false-distance.
  std::vector<edg::ConfigId> both{t1[0], t2[0]};
  CHECK(ctx.ihs_distance(view(3, 0, false, &both)) == 4);
}

TEST_CASE("meet and join match their closed forms on random pairs") {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  for (int i = 0; i < 20000; ++i) {
    BiDist a{dist(rng), dist(rng)};
    BiDist b{dist(rng), dist(rng)};
    BiDist m = meet(a, b);
    CHECK(m.t == a.t + b.t);
    CHECK(m.f == std::min(a.f, b.f));
    BiDist j = join(a, b);
    CHECK(j.t == std::min(a.t, b.t));
    CHECK(j.f == a.f + b.f);
  }
}

TEST_CASE("constraint extraction: conjunction becomes one system") {
  cgs::LcgsGame game(lcgs::compile(
      "template t\n"
      "  x : [0 .. 20] init 7;\n"
      "  y : [0 .. 20] init 1;\n"
      "  x' = x; y' = y;\n"
      "  label corner = y - x >= 1 && x + 2*y >= 14;\n"
      "  [w] 1;\n"
      "endtemplate\n"
      "player p = t [];"));
  atl::FormulaStore fs;
  auto prop = game.find_prop("p.corner");
  REQUIRE(prop);
  auto systems = extract_constraints(game, fs, fs.mk_prop(*prop));
  REQUIRE(systems.size() == 1);
  REQUIRE(systems[0].C.rows() == 2);
  CHECK(systems[0].C(0, 0) == doctest::Approx(-1));
  CHECK(systems[0].C(0, 1) == doctest::Approx(1));
  CHECK(systems[0].b(0) == doctest::Approx(1));
  CHECK(systems[0].C(1, 0) == doctest::Approx(1));
  CHECK(systems[0].C(1, 1) == doctest::Approx(2));
  CHECK(systems[0].b(1) == doctest::Approx(14));
}

TEST_CASE("constraint extraction: disjunction splits, bare props vanish") {
  cgs::LcgsGame game(lcgs::compile(
      "template t\n"
      "  x : [0 .. 9] init 0;\n"
      "  y : [0 .. 9] init 0;\n"
      "  x' = x; y' = y;\n"
      "  label split = x >= 1 || y >= 2;\n"
      "  label odd = (x / 2) * 2 != x;\n"
      "  [w] 1;\n"
      "endtemplate\n"
      "player p = t [];"));
  atl::FormulaStore fs;
  auto split = game.find_prop("p.split");
  auto odd = game.find_prop("p.odd");
  REQUIRE(split);
  REQUIRE(odd);
  CHECK(extract_constraints(game, fs, fs.mk_prop(*split)).size() == 2);
  // Non-affine definitions drop out entirely, as do plain propositions on
  // games without expressions.
  CHECK(extract_constraints(game, fs, fs.mk_prop(*odd)).empty());
  CHECK(extract_constraints(game, fs, fs.mk_or(fs.mk_prop(*odd), fs.mk_prop(*odd)))
            .empty());
}

TEST_CASE("constraint extraction descends into the until goal") {
  cgs::LcgsGame game(lcgs::compile(
      "template t\n"
      "  x : [0 .. 9] init 0;\n"
      "  x' = x;\n"
      "  label goal = x >= 7;\n"
      "  [w] 1;\n"
      "endtemplate\n"
      "player p = t [];"));
  atl::FormulaStore fs;
  auto goal = game.find_prop("p.goal");
  REQUIRE(goal);
  atl::PlayerSet a;
  a.add(0);
  atl::FormulaId until = fs.mk_enforce_until(a, fs.mk_true(), fs.mk_prop(*goal));
  auto systems = extract_constraints(game, fs, until);
  REQUIRE(systems.size() == 1);
  CHECK(systems[0].C(0, 0) == doctest::Approx(1));
  CHECK(systems[0].b(0) == doctest::Approx(7));
}

TEST_CASE("lp_solve reproduces the corner projection") {
  Eigen::MatrixXd C(2, 2);
  C << -1, 1, 0.5, 1;
  Eigen::VectorXd b(2);
  b << 1, 7;
  Eigen::VectorXd q(2);
  q << 7, 1;
  LpResult r = lp_solve(C, b, q);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.value == doctest::Approx(7).epsilon(1e-9));
  CHECK(r.s(0) == doctest::Approx(4).epsilon(1e-6));
  CHECK(r.s(1) == doctest::Approx(5).epsilon(1e-6));
}

TEST_CASE("lp_solve trivia: empty systems and contradictions") {
  Eigen::MatrixXd C(0, 2);
  Eigen::VectorXd b(0);
  Eigen::VectorXd q(2);
  q << 3, 4;
  LpResult r = lp_solve(C, b, q);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.value == doctest::Approx(0));
  CHECK(r.s(0) == doctest::Approx(3));

  // x >= 1 and -x >= 0 cannot both hold.
  Eigen::MatrixXd C2(2, 1);
  C2 << 1, -1;
  Eigen::VectorXd b2(2);
  b2 << 1, 0;
  Eigen::VectorXd q2(1);
  q2 << 0;
  CHECK(lp_solve(C2, b2, q2).status == LpResult::Status::Infeasible);
}

TEST_CASE("lp relaxation never exceeds the best integer point") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> rhs(-5, 5);
  std::uniform_int_distribution<int> qv(0, 6);
  for (int round = 0; round < 50; ++round) {
    Eigen::MatrixXd C(2, 2);
    Eigen::VectorXd b(2);
    for (int i = 0; i < 2; ++i) {
      C(i, 0) = coef(rng);
      C(i, 1) = coef(rng);
      b(i) = rhs(rng);
    }
    Eigen::VectorXd q(2), lo(2), hi(2);
    q << qv(rng), qv(rng);
    lo << 0, 0;
    hi << 6, 6;

    double best_integer = std::numeric_limits<double>::infinity();
    for (int x = 0; x <= 6; ++x)
      for (int y = 0; y <= 6; ++y) {
        Eigen::VectorXd s(2);
        s << x, y;
        if (((C * s - b).array() >= -1e-9).all())
          best_integer =
              std::min(best_integer, std::abs(x - q(0)) + std::abs(y - q(1)));
      }

    LpResult r = lp_solve(C, b, q, &lo, &hi);
    if (std::isinf(best_integer)) {
      // No integer point; the relaxation may still be feasible, which is fine.
      continue;
    }
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.value <= best_integer + 1e-7);
  }
}

TEST_CASE("lps distance is zero exactly on satisfying states") {
  cgs::LcgsGame game(lcgs::compile(
      "template t\n"
      "  x : [0 .. 9] init 0;\n"
      "  x' = min(x + me.inc, 9);\n"
      "  label goal = x >= 7;\n"
      "  [wait] 1;\n"
      "  [inc] x < 9;\n"
      "endtemplate\n"
      "player p = t [me=p];"));
  atl::FormulaStore fs;
  edg::ConfigStore configs(game, fs);
  StrategyContext ctx("lps", game, fs, configs);
  auto goal = game.find_prop("p.goal");
  REQUIRE(goal);
  atl::FormulaId prop = fs.mk_prop(*goal);

  edg::ConfigId far = configs.intern(game.state_from_values({0}), prop);
  edg::ConfigId at = configs.intern(game.state_from_values({8}), prop);
  CHECK(ctx.lps_distance(far) == doctest::Approx(7));
  CHECK(ctx.lps_distance(at) == doctest::Approx(0));

  // No linear information ranks last.
  edg::ConfigId blank = configs.intern(game.state_from_values({0}), fs.mk_true());
  CHECK(std::isinf(ctx.lps_distance(blank)));

  // Zero distance exactly on the satisfying states.
  for (int x = 0; x <= 9; ++x) {
    edg::ConfigId c = configs.intern(game.state_from_values({x}), prop);
    bool satisfied = x >= 7;
    CHECK_MESSAGE((ctx.lps_distance(c) < 1e-9) == satisfied, "x=", x);
  }
}

TEST_CASE("lrs saves the root projection and degrades to bfs when infeasible") {
  cgs::LcgsGame game(lcgs::compile(
      "template t\n"
      "  x : [0 .. 20] init 7;\n"
      "  y : [0 .. 20] init 1;\n"
      "  x' = x; y' = y;\n"
      "  label corner = y - x >= 1 && x + 2*y >= 14;\n"
      "  [w] 1;\n"
      "endtemplate\n"
      "player p = t [];"));
  atl::FormulaStore fs;
  edg::ConfigStore configs(game, fs);
  auto corner = game.find_prop("p.corner");
  REQUIRE(corner);
  atl::FormulaId prop = fs.mk_prop(*corner);
  edg::ConfigId root = configs.intern(game.initial_state(), prop);

  StrategyContext ctx("lrs", game, fs, configs);
  ctx.init_root(root);
  REQUIRE(ctx.lrs_active());
  // The projection of (7,1) lands on (4,5): distance 0 there, 7 at the root.
  edg::ConfigId at = configs.intern(game.state_from_values({4, 5}), prop);
  CHECK(ctx.lrs_distance(at) == doctest::Approx(0).epsilon(1e-6));
  CHECK(ctx.lrs_distance(root) == doctest::Approx(7).epsilon(1e-6));

  // A root with no linear information falls back to bfs.
  edg::ConfigId blank = configs.intern(game.initial_state(), fs.mk_true());
  StrategyContext fallback("lrs", game, fs, configs);
  fallback.init_root(blank);
  CHECK(!fallback.lrs_active());
  auto queue = fallback.make_queue();
  std::vector<edg::ConfigId> none;
  queue->push(view(1, root, false, &none));
  queue->push(view(2, root, false, &none));
  CHECK(*queue->pop() == 1);
}
