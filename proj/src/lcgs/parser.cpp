#include "cgmc/lcgs/parser.hpp"

#include <sstream>

namespace cgmc::lcgs {

namespace {

class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

  Program parse_program() {
    Program p;
    while (!at(Tok::End)) {
      if (at(Tok::KwConst)) {
        p.consts.push_back(parse_const());
      } else if (at(Tok::KwTemplate)) {
        p.templates.push_back(parse_template());
      } else if (at(Tok::KwPlayer)) {
        p.players.push_back(parse_player());
      } else {
        fail("'const', 'template' or 'player'");
      }
    }
    return p;
  }

 private:
  const std::vector<Token>& toks_;
  size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok t) const { return cur().kind == t; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& expected) {
    std::ostringstream os;
    os << "expected " << expected << ", found " << token_name(cur().kind);
    if (cur().kind == Tok::Ident || cur().kind == Tok::Int)
      os << " '" << cur().text << "'";
    throw Error(ErrorKind::Syntax, cur().pos, os.str());
  }

  Token expect(Tok t) {
    if (!at(t)) fail(token_name(t));
    return take();
  }

  ConstDecl parse_const() {
    SourcePos p = expect(Tok::KwConst).pos;
    std::string name = expect(Tok::Ident).text;
    expect(Tok::Eq);
    ExprRef v = parse_expr();
    expect(Tok::Semi);
    return ConstDecl{p, std::move(name), std::move(v)};
  }

  TemplateDecl parse_template() {
    TemplateDecl t;
    t.pos = expect(Tok::KwTemplate).pos;
    t.name = expect(Tok::Ident).text;
    while (!at(Tok::KwEndTemplate)) {
      if (at(Tok::KwLabel)) {
        SourcePos p = take().pos;
        std::string name = expect(Tok::Ident).text;
        expect(Tok::Eq);
        ExprRef e = parse_expr();
        expect(Tok::Semi);
        t.labels.push_back(LabelDecl{p, std::move(name), std::move(e)});
      } else if (at(Tok::LBracket)) {
        SourcePos p = take().pos;
        std::string name = expect(Tok::Ident).text;
        expect(Tok::RBracket);
        ExprRef e = parse_expr();
        expect(Tok::Semi);
        t.actions.push_back(ActionDecl{p, std::move(name), std::move(e)});
      } else if (at(Tok::PrimedIdent)) {
        Token tok = take();
        expect(Tok::Eq);
        ExprRef e = parse_expr();
        expect(Tok::Semi);
        t.updates.push_back(UpdateDecl{tok.pos, tok.text, std::move(e)});
      } else if (at(Tok::Ident)) {
        Token tok = take();
        expect(Tok::Colon);
        expect(Tok::LBracket);
        ExprRef lo = parse_expr();
        expect(Tok::DotDot);
        ExprRef hi = parse_expr();
        expect(Tok::RBracket);
        expect(Tok::KwInit);
        ExprRef init = parse_expr();
        expect(Tok::Semi);
        t.vars.push_back(VarDecl{tok.pos, tok.text, std::move(lo), std::move(hi),
                                 std::move(init)});
      } else {
        fail("a declaration or 'endtemplate'");
      }
    }
    expect(Tok::KwEndTemplate);
    return t;
  }

  PlayerDecl parse_player() {
    PlayerDecl d;
    d.pos = expect(Tok::KwPlayer).pos;
    d.name = expect(Tok::Ident).text;
    expect(Tok::Eq);
    d.template_name = expect(Tok::Ident).text;
    if (at(Tok::LBracket)) {
      take();
      if (!at(Tok::RBracket)) {
        for (;;) {
          Relabel r;
          Token from = expect(Tok::Ident);
          r.pos = from.pos;
          r.from = from.text;
          expect(Tok::Eq);
          r.to = parse_expr();
          d.relabels.push_back(std::move(r));
          if (at(Tok::Comma)) {
            take();
            continue;
          }
          break;
        }
      }
      expect(Tok::RBracket);
    }
    expect(Tok::Semi);
    return d;
  }

  // Precedence: || < && < comparison < +- < */ < unary.
  ExprRef parse_expr() { return parse_or(); }

  ExprRef parse_or() {
    ExprRef l = parse_and();
    while (at(Tok::OrOr)) {
      SourcePos p = take().pos;
      l = Expr::make_binary(BinOp::Or, l, parse_and(), p);
    }
    return l;
  }

  ExprRef parse_and() {
    ExprRef l = parse_cmp();
    while (at(Tok::AndAnd)) {
      SourcePos p = take().pos;
      l = Expr::make_binary(BinOp::And, l, parse_cmp(), p);
    }
    return l;
  }

  ExprRef parse_cmp() {
    ExprRef l = parse_add();
    BinOp op;
    switch (cur().kind) {
      case Tok::Lt: op = BinOp::Lt; break;
      case Tok::Le: op = BinOp::Le; break;
      case Tok::Gt: op = BinOp::Gt; break;
      case Tok::Ge: op = BinOp::Ge; break;
      case Tok::Eq: op = BinOp::Eq; break;
      case Tok::Neq: op = BinOp::Ne; break;
      default: return l;
    }
    SourcePos p = take().pos;
    return Expr::make_binary(op, l, parse_add(), p);
  }

  ExprRef parse_add() {
    ExprRef l = parse_mul();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Token t = take();
      l = Expr::make_binary(t.kind == Tok::Plus ? BinOp::Add : BinOp::Sub, l,
                            parse_mul(), t.pos);
    }
    return l;
  }

  ExprRef parse_mul() {
    ExprRef l = parse_unary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      Token t = take();
      l = Expr::make_binary(t.kind == Tok::Star ? BinOp::Mul : BinOp::Div, l,
                            parse_unary(), t.pos);
    }
    return l;
  }

  ExprRef parse_unary() {
    if (at(Tok::Bang)) {
      SourcePos p = take().pos;
      return Expr::make_unary(UnOp::Not, parse_unary(), p);
    }
    if (at(Tok::Minus)) {
      SourcePos p = take().pos;
      return Expr::make_unary(UnOp::Neg, parse_unary(), p);
    }
    return parse_primary();
  }

  ExprRef parse_primary() {
    if (at(Tok::Int)) {
      Token t = take();
      return Expr::make_int(t.value, t.pos);
    }
    if (at(Tok::KwMin) || at(Tok::KwMax)) {
      Token t = take();
      expect(Tok::LParen);
      ExprRef a = parse_expr();
      expect(Tok::Comma);
      ExprRef b = parse_expr();
      expect(Tok::RParen);
      return Expr::make_minmax(t.kind == Tok::KwMin, a, b, t.pos);
    }
    if (at(Tok::LParen)) {
      take();
      ExprRef e = parse_expr();
      expect(Tok::RParen);
      return e;
    }
    if (at(Tok::Ident)) {
      Token t = take();
      if (at(Tok::Dot)) {
        take();
        Token n = expect(Tok::Ident);
        return Expr::make_ident(t.text, n.text, t.pos);
      }
      return Expr::make_ident("", t.text, t.pos);
    }
    fail("an expression");
  }
};

}  // namespace

Program parse(const std::vector<Token>& tokens) {
  return Parser(tokens).parse_program();
}

Program parse(std::string_view source) { return parse(tokenize(source)); }

}  // namespace cgmc::lcgs
