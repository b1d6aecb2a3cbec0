#pragma once

#include <string_view>

#include "cgmc/lcgs/ast.hpp"
#include "cgmc/lcgs/lexer.hpp"

namespace cgmc::lcgs {

/// Parses LCGS source into an AST. Throws Error(Syntax) with the expected
/// token set and location on malformed input.
Program parse(const std::vector<Token>& tokens);
Program parse(std::string_view source);

}  // namespace cgmc::lcgs
