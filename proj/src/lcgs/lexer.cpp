#include "cgmc/lcgs/lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace cgmc::lcgs {

const char* token_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::PrimedIdent: return "primed identifier";
    case Tok::Int: return "integer";
    case Tok::KwConst: return "'const'";
    case Tok::KwTemplate: return "'template'";
    case Tok::KwEndTemplate: return "'endtemplate'";
    case Tok::KwPlayer: return "'player'";
    case Tok::KwLabel: return "'label'";
    case Tok::KwInit: return "'init'";
    case Tok::KwMin: return "'min'";
    case Tok::KwMax: return "'max'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::Colon: return "':'";
    case Tok::Eq: return "'='";
    case Tok::Neq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Bang: return "'!'";
    case Tok::End: return "end of input";
  }
  return "?";
}

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> kw = {
      {"const", Tok::KwConst},     {"template", Tok::KwTemplate},
      {"endtemplate", Tok::KwEndTemplate}, {"player", Tok::KwPlayer},
      {"label", Tok::KwLabel},     {"init", Tok::KwInit},
      {"min", Tok::KwMin},         {"max", Tok::KwMax},
  };
  return kw;
}

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;

  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (i < src.size() && src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto push = [&](Tok t, SourcePos p, std::string text = {}, long v = 0) {
    out.push_back(Token{t, std::move(text), v, p});
  };

  while (i < src.size()) {
    char c = src[i];
    SourcePos pos{line, col};
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      std::string text(src.substr(i, j - i));
      long v = 0;
      try {
        v = std::stol(text);
      } catch (const std::exception&) {
        throw Error(ErrorKind::Lex, pos, "integer literal out of range: " + text);
      }
      push(Tok::Int, pos, text, v);
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string text(src.substr(i, j - i));
      auto it = keywords().find(text);
      if (it != keywords().end()) {
        push(it->second, pos, text);
        advance(j - i);
      } else if (j < src.size() && src[j] == '\'') {
        push(Tok::PrimedIdent, pos, text);
        advance(j - i + 1);
      } else {
        push(Tok::Ident, pos, text);
        advance(j - i);
      }
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (two('.', '.')) { push(Tok::DotDot, pos); advance(2); continue; }
    if (two('=', '=')) { push(Tok::Eq, pos); advance(2); continue; }
    if (two('!', '=')) { push(Tok::Neq, pos); advance(2); continue; }
    if (two('<', '=')) { push(Tok::Le, pos); advance(2); continue; }
    if (two('>', '=')) { push(Tok::Ge, pos); advance(2); continue; }
    if (two('&', '&')) { push(Tok::AndAnd, pos); advance(2); continue; }
    if (two('|', '|')) { push(Tok::OrOr, pos); advance(2); continue; }
    switch (c) {
      case '[': push(Tok::LBracket, pos); break;
      case ']': push(Tok::RBracket, pos); break;
      case '(': push(Tok::LParen, pos); break;
      case ')': push(Tok::RParen, pos); break;
      case ';': push(Tok::Semi, pos); break;
      case ',': push(Tok::Comma, pos); break;
      case '.': push(Tok::Dot, pos); break;
      case ':': push(Tok::Colon, pos); break;
      case '=': push(Tok::Eq, pos); break;
      case '<': push(Tok::Lt, pos); break;
      case '>': push(Tok::Gt, pos); break;
      case '+': push(Tok::Plus, pos); break;
      case '-': push(Tok::Minus, pos); break;
      case '*': push(Tok::Star, pos); break;
      case '/': push(Tok::Slash, pos); break;
      case '!': push(Tok::Bang, pos); break;
      default:
        throw Error(ErrorKind::Lex, pos,
                    std::string("unexpected character '") + c + "'");
    }
    advance(1);
  }
  out.push_back(Token{Tok::End, {}, 0, SourcePos{line, col}});
  return out;
}

}  // namespace cgmc::lcgs
