#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "cgmc/atl/formula.hpp"
#include "cgmc/cgs/lcgs_game.hpp"
#include "cgmc/lcgs/compiler.hpp"
#include "support/oracle.hpp"
#include "support/random_cgs.hpp"

using namespace cgmc;
using namespace cgmc::atl;

namespace {

std::string read_model(const std::string& name) {
  std::ifstream in(std::string(CGMC_MODELS_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool has_sugar(const FormulaStore& fs, FormulaId f) {
  const Node& n = fs.node(f);
  if (!is_core(n.kind)) return true;
  switch (n.kind) {
    case Kind::Not:
      return has_sugar(fs, n.a);
    case Kind::Or:
    case Kind::EnforceUntil:
    case Kind::DespiteUntil:
      return has_sugar(fs, n.a) || has_sugar(fs, n.b);
    case Kind::EnforceNext:
      return has_sugar(fs, n.a);
    default:
      return false;
  }
}

}  // namespace

TEST_CASE("parse the flagship query") {
  cgs::LcgsGame game(lcgs::compile(read_model("standoff.lcgs")));
  FormulaStore fs;
  FormulaId f = parse_formula("<<billy>> G billy.alive", game, fs);
  const Node& n = fs.node(f);
  CHECK(n.kind == Kind::EnforceInvariant);
  CHECK(n.players.members() == std::vector<int>{0});
  CHECK(fs.node(n.a).kind == Kind::Prop);
}

TEST_CASE("parse a despite until over a two-player game") {
  test::ExplicitGame game(2, 2, {{1, 1}}, {{0}}, {{0, 1}});
  FormulaStore fs;
  FormulaId f = parse_formula("[[pl1]] (p0 U p1)", game, fs);
  const Node& n = fs.node(f);
  CHECK(n.kind == Kind::DespiteUntil);
  CHECK(n.players.members() == std::vector<int>{0});
}

TEST_CASE("empty coalitions are allowed") {
  test::ExplicitGame game(2, 1, {{1, 1}}, {{0}}, {{0}});
  FormulaStore fs;
  FormulaId f = parse_formula("<<>> F p0", game, fs);
  CHECK(fs.node(f).kind == Kind::EnforceEventually);
  CHECK(fs.node(f).players.empty());
}

TEST_CASE("parser reports unknown names and syntax errors") {
  test::ExplicitGame game(2, 1, {{1, 1}}, {{0}}, {{0}});
  FormulaStore fs;
  CHECK_THROWS_AS(parse_formula("<<nosuch>> X p0", game, fs), Error);
  CHECK_THROWS_AS(parse_formula("p7", game, fs), Error);
  CHECK_THROWS_AS(parse_formula("<<pl1>> p0", game, fs), Error);  // no temporal op
  CHECK_THROWS_AS(parse_formula("p0 p0", game, fs), Error);       // trailing input
}

TEST_CASE("precedence: ! binds tighter than && tighter than ||") {
  test::ExplicitGame game(2, 3, {{1, 1}}, {{0}}, {{0, 1, 2}});
  FormulaStore fs;
  FormulaId f = parse_formula("!p0 && p1 || p2", game, fs);
  const Node& top = fs.node(f);
  CHECK(top.kind == Kind::Or);
  CHECK(fs.node(top.a).kind == Kind::And);
  CHECK(fs.node(fs.node(top.a).a).kind == Kind::Not);
}

TEST_CASE("desugar rewrites the invariant through the despite dual") {
  test::ExplicitGame game(2, 1, {{1, 1}}, {{0}}, {{0}});
  FormulaStore fs;
  PlayerSet a;
  a.add(0);
  FormulaId p = fs.mk_prop(0);
  FormulaId g = fs.mk_enforce_invariant(a, p);
  FormulaId core = fs.desugar(g);
  // !( [[a]] (true U !p) )
  const Node& n1 = fs.node(core);
  REQUIRE(n1.kind == Kind::Not);
  const Node& n2 = fs.node(n1.a);
  REQUIRE(n2.kind == Kind::DespiteUntil);
  CHECK(fs.node(n2.a).kind == Kind::True);
  CHECK(fs.node(fs.node(n2.b).a).kind == Kind::Prop);
}

TEST_CASE("desugar rewrites eventually as an until from true") {
  FormulaStore fs;
  PlayerSet a;
  a.add(1);
  FormulaId f = fs.desugar(fs.mk_enforce_eventually(a, fs.mk_prop(0)));
  const Node& n = fs.node(f);
  CHECK(n.kind == Kind::EnforceUntil);
  CHECK(fs.node(n.a).kind == Kind::True);
}

TEST_CASE("desugar is the identity on core forms") {
  FormulaStore fs;
  FormulaId p = fs.mk_prop(0);
  CHECK(fs.desugar(p) == p);
  FormulaId u = fs.mk_enforce_until(PlayerSet{}, p, fs.mk_prop(1));
  CHECK(fs.desugar(u) == u);
}

TEST_CASE("desugar is idempotent, bounded, and leaves no sugar") {
  FormulaStore fs;
  for (FormulaId f : test::formula_templates(fs)) {
    FormulaId once = fs.desugar(f);
    CHECK(fs.desugar(once) == once);
    CHECK(!has_sugar(fs, once));
    CHECK(fs.subformula_size(once) <= 4 * fs.subformula_size(f));
  }
}

TEST_CASE("subformula sizes count tree nodes") {
  FormulaStore fs;
  FormulaId p = fs.mk_prop(0);
  CHECK(fs.subformula_size(p) == 1);
  CHECK(fs.subformula_size(fs.mk_not(p)) == 2);
  PlayerSet a;
  a.add(0);
  CHECK(fs.subformula_size(fs.mk_enforce_until(a, p, fs.mk_prop(1))) == 3);
}

TEST_CASE("formulas are hash-consed") {
  FormulaStore fs;
  FormulaId a = fs.mk_or(fs.mk_prop(0), fs.mk_prop(1));
  FormulaId b = fs.mk_or(fs.mk_prop(0), fs.mk_prop(1));
  CHECK(a == b);
}

TEST_CASE("desugaring preserves oracle truth on random games") {
  std::mt19937 rng(7070);
  for (int round = 0; round < 12; ++round) {
    auto game = test::random_game(rng, 5, 2, 2, 2);
    FormulaStore fs;
    auto en = test::oracle::enumerate(*game);
    for (FormulaId f : test::formula_templates(fs)) {
      auto direct = test::oracle::sat_set(*game, fs, f, en);
      auto cored = test::oracle::sat_set(*game, fs, fs.desugar(f), en);
      CHECK(direct == cored);
    }
  }
}
