#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cgmc/error.hpp"

namespace cgmc::lcgs {

enum class Tok {
  Ident,
  PrimedIdent,  // name'
  Int,
  KwConst,
  KwTemplate,
  KwEndTemplate,
  KwPlayer,
  KwLabel,
  KwInit,
  KwMin,
  KwMax,
  LBracket,
  RBracket,
  LParen,
  RParen,
  Semi,
  Comma,
  Dot,
  DotDot,
  Colon,
  Eq,    // '=' and '=='
  Neq,   // '!='
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  Star,
  Slash,
  AndAnd,
  OrOr,
  Bang,
  End
};

struct Token {
  Tok kind;
  std::string text;  // identifier name (without prime) or integer literal
  long value = 0;    // for Int
  SourcePos pos;
};

const char* token_name(Tok t);

/// Splits LCGS source into tokens. Line comments (`// ...`) are dropped.
/// Throws Error(Lex) with position on any unexpected character.
std::vector<Token> tokenize(std::string_view source);

}  // namespace cgmc::lcgs
