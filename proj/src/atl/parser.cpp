#include <cctype>
#include <sstream>
#include <vector>

#include "cgmc/atl/formula.hpp"
#include "cgmc/error.hpp"

namespace cgmc::atl {

namespace {

enum class Tk {
  Ident, True, False, X, F, G, U,
  OpenEnforce, CloseEnforce,   // << >>
  OpenDespite, CloseDespite,   // [[ ]]
  LParen, RParen, Comma, Dot, Bang, AndAnd, OrOr, End
};

struct Token {
  Tk kind;
  std::string text;
  SourcePos pos;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') { ++line; col = 1; } else { ++col; }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    SourcePos pos{line, col};
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (two('<', '<')) { out.push_back({Tk::OpenEnforce, "<<", pos}); advance(2); continue; }
    if (two('>', '>')) { out.push_back({Tk::CloseEnforce, ">>", pos}); advance(2); continue; }
    if (two('[', '[')) { out.push_back({Tk::OpenDespite, "[[", pos}); advance(2); continue; }
    if (two(']', ']')) { out.push_back({Tk::CloseDespite, "]]", pos}); advance(2); continue; }
    if (two('&', '&')) { out.push_back({Tk::AndAnd, "&&", pos}); advance(2); continue; }
    if (two('|', '|')) { out.push_back({Tk::OrOr, "||", pos}); advance(2); continue; }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string text(src.substr(i, j - i));
      Tk k = Tk::Ident;
      if (text == "true") k = Tk::True;
      else if (text == "false") k = Tk::False;
      else if (text == "X") k = Tk::X;
      else if (text == "F") k = Tk::F;
      else if (text == "G") k = Tk::G;
      else if (text == "U") k = Tk::U;
      out.push_back({k, std::move(text), pos});
      advance(j - i);
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tk::LParen, "(", pos}); break;
      case ')': out.push_back({Tk::RParen, ")", pos}); break;
      case ',': out.push_back({Tk::Comma, ",", pos}); break;
      case '.': out.push_back({Tk::Dot, ".", pos}); break;
      case '!': out.push_back({Tk::Bang, "!", pos}); break;
      default:
        throw Error(ErrorKind::Syntax, pos,
                    std::string("unexpected character '") + c + "' in formula");
    }
    advance(1);
  }
  out.push_back({Tk::End, "", SourcePos{line, col}});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const cgs::GameStructure& game, FormulaStore& store)
      : toks_(std::move(toks)), game_(game), store_(store) {}

  FormulaId run() {
    FormulaId f = parse_or();
    if (!at(Tk::End))
      throw Error(ErrorKind::Syntax, cur().pos,
                  "trailing input after formula: '" + cur().text + "'");
    return f;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  const cgs::GameStructure& game_;
  FormulaStore& store_;

  const Token& cur() const { return toks_[pos_]; }
  bool at(Tk t) const { return cur().kind == t; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& expected) {
    std::ostringstream os;
    os << "expected " << expected;
    if (!cur().text.empty()) os << ", found '" << cur().text << "'";
    throw Error(ErrorKind::Syntax, cur().pos, os.str());
  }

  void expect(Tk t, const char* what) {
    if (!at(t)) fail(what);
    take();
  }

  FormulaId parse_or() {
    FormulaId l = parse_and();
    while (at(Tk::OrOr)) {
      take();
      l = store_.mk_or(l, parse_and());
    }
    return l;
  }

  FormulaId parse_and() {
    FormulaId l = parse_unary();
    while (at(Tk::AndAnd)) {
      take();
      l = store_.mk_and(l, parse_unary());
    }
    return l;
  }

  FormulaId parse_unary() {
    if (at(Tk::Bang)) {
      take();
      return store_.mk_not(parse_unary());
    }
    return parse_primary();
  }

  FormulaId parse_primary() {
    if (at(Tk::True)) { take(); return store_.mk_true(); }
    if (at(Tk::False)) { take(); return store_.mk_not(store_.mk_true()); }
    if (at(Tk::LParen)) {
      take();
      FormulaId f = parse_or();
      expect(Tk::RParen, "')'");
      return f;
    }
    if (at(Tk::OpenEnforce) || at(Tk::OpenDespite)) return parse_quantified();
    if (at(Tk::Ident)) return parse_prop();
    fail("a formula");
  }

  FormulaId parse_quantified() {
    bool enforce = at(Tk::OpenEnforce);
    take();
    PlayerSet A = parse_players(enforce ? Tk::CloseEnforce : Tk::CloseDespite,
                                enforce ? "'>>'" : "']]'");
    // A quantifier binds exactly one temporal operator.
    if (at(Tk::X)) {
      take();
      FormulaId f = parse_unary();
      return enforce ? store_.mk_enforce_next(A, f) : store_.mk_despite_next(A, f);
    }
    if (at(Tk::F)) {
      take();
      FormulaId f = parse_unary();
      return enforce ? store_.mk_enforce_eventually(A, f)
                     : store_.mk_despite_eventually(A, f);
    }
    if (at(Tk::G)) {
      take();
      FormulaId f = parse_unary();
      return enforce ? store_.mk_enforce_invariant(A, f)
                     : store_.mk_despite_invariant(A, f);
    }
    if (at(Tk::LParen)) {
      take();
      FormulaId a = parse_or();
      expect(Tk::U, "'U'");
      FormulaId b = parse_or();
      expect(Tk::RParen, "')'");
      return enforce ? store_.mk_enforce_until(A, a, b)
                     : store_.mk_despite_until(A, a, b);
    }
    fail("a temporal operator (X, F, G or '(f U g)')");
  }

  PlayerSet parse_players(Tk close, const char* close_name) {
    PlayerSet A;
    if (at(close)) {
      take();
      return A;  // empty coalition
    }
    for (;;) {
      if (!at(Tk::Ident)) fail("a player name");
      Token t = take();
      auto p = game_.find_player(t.text);
      if (!p)
        throw Error(ErrorKind::Resolve, t.pos, "unknown player '" + t.text + "'");
      if (*p >= 64)
        throw Error(ErrorKind::Resolve, t.pos, "more than 64 players unsupported");
      A.add(*p);
      if (at(Tk::Comma)) { take(); continue; }
      break;
    }
    expect(close, close_name);
    return A;
  }

  FormulaId parse_prop() {
    Token t = take();
    std::string name = t.text;
    if (at(Tk::Dot)) {
      take();
      if (!at(Tk::Ident)) fail("a label name after '.'");
      Token l = take();
      name += "." + l.text;
    }
    auto prop = game_.find_prop(name);
    if (!prop)
      throw Error(ErrorKind::Resolve, t.pos, "unknown proposition '" + name + "'");
    return store_.mk_prop(*prop);
  }
};

}  // namespace

FormulaId parse_formula(std::string_view text, const cgs::GameStructure& game,
                        FormulaStore& store) {
  return Parser(lex(text), game, store).run();
}

}  // namespace cgmc::atl
