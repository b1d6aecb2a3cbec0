#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cgmc/cgs/expr.hpp"
#include "cgmc/lcgs/ast.hpp"

namespace cgmc::lcgs {

struct CompiledAction {
  std::string name;      // template-local name after relabelling
  cgs::Expr availability;
};

struct CompiledVar {
  std::string qualified_name;  // "player.var"
  int owner = 0;
  int lo = 0, hi = 0;
  int init = 0;
  cgs::Expr update;
};

struct CompiledLabel {
  std::string qualified_name;  // "player.label"
  int owner = 0;
  cgs::Expr expr;
};

struct CompiledPlayer {
  std::string name;
  std::vector<CompiledAction> actions;
};

/// Fully resolved game definition: templates instantiated, relabellings
/// substituted, constants folded, identifiers bound to state slots or
/// action-taken indicators. Immutable once built; safe to share across
/// threads.
struct CompiledGame {
  std::vector<CompiledPlayer> players;      // index = player number
  std::vector<CompiledVar> vars;            // index = state-vector slot
  std::vector<CompiledLabel> labels;        // index = proposition id
  std::vector<int> initial;

  std::unordered_map<std::string, int> player_index;
  std::unordered_map<std::string, int> var_index;    // qualified name -> slot
  std::unordered_map<std::string, int> label_index;  // qualified name -> prop
};

/// Resolve and instantiate an AST into a compiled game. Throws Error(Resolve)
/// for undefined identifiers, circular constants, bad relabellings and name
/// collisions, Error(Type) from check_ranges.
CompiledGame resolve_and_instantiate(const Program& ast);

/// Validates a resolved game: every init value lies inside its declared
/// range. Throws Error(Type) otherwise.
void check_ranges(const CompiledGame& game);

/// Convenience: parse + resolve + check.
CompiledGame compile(std::string_view source);

}  // namespace cgmc::lcgs
