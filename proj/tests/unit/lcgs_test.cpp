#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cgmc/lcgs/compiler.hpp"
#include "cgmc/lcgs/parser.hpp"

using namespace cgmc;
using namespace cgmc::lcgs;

namespace {

std::string read_model(const std::string& name) {
  std::ifstream in(std::string(CGMC_MODELS_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("tokenize primed update") {
  auto toks = tokenize("health' = 2;");
  REQUIRE(toks.size() == 5);  // includes End
  CHECK(toks[0].kind == Tok::PrimedIdent);
  CHECK(toks[0].text == "health");
  CHECK(toks[1].kind == Tok::Eq);
  CHECK(toks[2].kind == Tok::Int);
  CHECK(toks[2].value == 2);
  CHECK(toks[3].kind == Tok::Semi);
}

TEST_CASE("tokenize action declaration") {
  auto toks = tokenize("[shoot_right] h > 0;");
  REQUIRE(toks.size() == 8);
  CHECK(toks[0].kind == Tok::LBracket);
  CHECK(toks[1].kind == Tok::Ident);
  CHECK(toks[1].text == "shoot_right");
  CHECK(toks[2].kind == Tok::RBracket);
  CHECK(toks[3].kind == Tok::Ident);
  CHECK(toks[4].kind == Tok::Gt);
  CHECK(toks[5].kind == Tok::Int);
  CHECK(toks[6].kind == Tok::Semi);
}

TEST_CASE("tokenize strips comments") {
  auto toks = tokenize("// comment\nconst x = 1;");
  REQUIRE(toks.size() == 6);  // const x = 1 ; End
  CHECK(toks[0].kind == Tok::KwConst);
  CHECK(toks[4].kind == Tok::Semi);
}

TEST_CASE("tokenize reports position of bad characters") {
  try {
    tokenize("const x = 1;\n  @");
    FAIL("expected a lexical error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Lex);
    CHECK(e.pos().line == 2);
    CHECK(e.pos().column == 3);
  }
}

TEST_CASE("parse the standoff model") {
  Program p = parse(read_model("standoff.lcgs"));
  REQUIRE(p.consts.size() == 1);
  CHECK(p.consts[0].name == "max_health");
  REQUIRE(p.templates.size() == 1);
  const TemplateDecl& t = p.templates[0];
  CHECK(t.vars.size() == 1);
  CHECK(t.updates.size() == 1);
  CHECK(t.labels.size() == 1);
  CHECK(t.actions.size() == 3);
  REQUIRE(p.players.size() == 3);
  CHECK(p.players[0].name == "billy");
  CHECK(p.players[0].template_name == "cowboy");
  CHECK(p.players[0].relabels.size() == 2);
}

TEST_CASE("parse empty input, reject at compile") {
  Program p = parse("");
  CHECK(p.consts.empty());
  CHECK(p.templates.empty());
  CHECK(p.players.empty());
  CHECK_THROWS_AS(resolve_and_instantiate(p), Error);
}

TEST_CASE("player referencing a missing template") {
  Program p = parse("player p = ghost [];");
  try {
    resolve_and_instantiate(p);
    FAIL("expected a resolution error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resolve);
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
  }
}

TEST_CASE("syntax error carries the expected token") {
  try {
    parse("const = 4;");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Syntax);
    CHECK(std::string(e.what()).find("identifier") != std::string::npos);
  }
}

TEST_CASE("standoff instantiation: three players, three variables, nine actions") {
  CompiledGame g = compile(read_model("standoff.lcgs"));
  CHECK(g.players.size() == 3);
  CHECK(g.vars.size() == 3);
  int actions = 0;
  for (const auto& p : g.players) actions += static_cast<int>(p.actions.size());
  CHECK(actions == 9);
  CHECK(g.initial == std::vector<int>{2, 2, 2});
  CHECK(g.vars[0].qualified_name == "billy.health");
  CHECK(g.vars[0].lo == 0);
  CHECK(g.vars[0].hi == 2);  // const folded into the range
}

TEST_CASE("template with no instances contributes nothing") {
  CompiledGame g = compile(
      "template unused u : [0..5] init 5; u' = u; [a] 1; endtemplate\n"
      "template used v : [0..1] init 0; v' = v; [b] 1; endtemplate\n"
      "player p = used [];");
  CHECK(g.players.size() == 1);
  CHECK(g.vars.size() == 1);
  CHECK(g.vars[0].qualified_name == "p.v");
}

TEST_CASE("relabelling substitutes only the targeted identifier") {
  // a is relabelled; the template's own x stays bound to the instance.
  CompiledGame g = compile(
      "template t\n"
      "  x : [0..9] init a;\n"
      "  x' = x;\n"
      "  [go] 1;\n"
      "endtemplate\n"
      "player one = t [a=7];\n");
  CHECK(g.vars[0].init == 7);
}

TEST_CASE("relabelling a declared name renames it") {
  CompiledGame g = compile(
      "template t\n"
      "  x : [0..9] init 1;\n"
      "  x' = x;\n"
      "  label low = x < 5;\n"
      "  [go] 1;\n"
      "endtemplate\n"
      "player one = t [x=height];\n");
  CHECK(g.vars[0].qualified_name == "one.height");
  CHECK(g.label_index.count("one.low") == 1);
}

TEST_CASE("relabelling collisions are rejected") {
  CHECK_THROWS_AS(compile("template t\n"
                          "  x : [0..1] init 0; x' = x;\n"
                          "  y : [0..1] init 0; y' = y;\n"
                          "  [go] 1;\n"
                          "endtemplate\n"
                          "player p = t [y=x];\n"),
                  Error);
}

TEST_CASE("circular constants are rejected") {
  try {
    compile("const a = b; const b = a;\n"
            "template t x : [0..1] init 0; x' = x; [go] 1; endtemplate\n"
            "player p = t [];");
    FAIL("expected a resolution error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resolve);
    CHECK(std::string(e.what()).find("circular") != std::string::npos);
  }
}

TEST_CASE("unqualified action indicators are rejected") {
  try {
    compile("template t\n"
            "  x : [0..1] init 0;\n"
            "  x' = min(x + go, 1);\n"
            "  [go] 1;\n"
            "endtemplate\n"
            "player p = t [];");
    FAIL("expected a resolution error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resolve);
    CHECK(std::string(e.what()).find("player.action") != std::string::npos);
  }
}

TEST_CASE("qualified own action indicators work via a self relabel") {
  CompiledGame g = compile(
      "template t\n"
      "  x : [0..1] init 0;\n"
      "  x' = min(x + me.go, 1);\n"
      "  [wait] 1;\n"
      "  [go] 1;\n"
      "endtemplate\n"
      "player p = t [me=p];");
  CHECK(g.vars[0].update.uses_actions());
}

TEST_CASE("check_ranges accepts in-range inits and rejects escapes") {
  CHECK_NOTHROW(compile("template t h : [0..2] init 2; h' = h; [w] 1; endtemplate\n"
                        "player p = t [];"));
  try {
    compile("template t x : [0..1] init 5; x' = x; [w] 1; endtemplate\n"
            "player p = t [];");
    FAIL("expected a range error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Type);
  }
}

TEST_CASE("integer labels are accepted via nonzero coercion") {
  CHECK_NOTHROW(compile("template t h : [0..2] init 1; h' = h; label lively = h;\n"
                        "[w] 1; endtemplate\n"
                        "player p = t [];"));
}

TEST_CASE("empty ranges are rejected") {
  CHECK_THROWS_AS(compile("template t x : [3..1] init 2; x' = x; [w] 1; endtemplate\n"
                          "player p = t [];"),
                  Error);
}

TEST_CASE("round-trip: print then parse is structurally identical") {
  for (const char* name : {"standoff.lcgs", "gg_ring_3.lcgs", "rc_3x3.lcgs",
                           "witness_chain.lcgs", "ms_4_1.lcgs"}) {
    Program p = parse(read_model(name));
    Program again = parse(print_program(p));
    CHECK_MESSAGE(program_equal(p, again), name);
    // And printing is a fixed point once the tree is canonical.
    CHECK(print_program(again) == print_program(p));
  }
}

TEST_CASE("fold computes max(2-3, 0)") {
  Program p = parse("const c = max(2 - 3, 0);");
  Program folded = fold_constants(p);
  REQUIRE(folded.consts.size() == 1);
  CHECK(folded.consts[0].value->kind == Expr::Kind::Int);
  CHECK(folded.consts[0].value->value == 0);
}

TEST_CASE("fold is idempotent on every fixture") {
  for (const char* name : {"standoff.lcgs", "gg_ring_3.lcgs", "rc_3x3.lcgs"}) {
    Program p = parse(read_model(name));
    Program once = fold_constants(p);
    Program twice = fold_constants(once);
    CHECK_MESSAGE(program_equal(once, twice), name);
  }
}
