#pragma once

#include <map>
#include <string>
#include <vector>

#include "cgmc/lcgs/ast.hpp"

namespace cgmc::test {

/// Straight-line interpreter over the raw LCGS AST: identifiers are resolved
/// on the fly against the template text and relabelling lists, with no
/// substitution, folding or compilation. Serves as the independent oracle
/// for the compiler pipeline. Variable layout follows declaration order
/// (players in declaration order, template variables in declaration order).
class AstInterpreter {
 public:
  explicit AstInterpreter(const lcgs::Program& program);

  int player_count() const { return static_cast<int>(players_.size()); }
  int var_count() const { return static_cast<int>(var_names_.size()); }
  const std::string& var_name(int slot) const { return var_names_[slot]; }

  std::vector<int> initial_state() const;
  std::pair<long, long> var_bounds(int slot) const;

  /// taken[a] is the (renamed) action name player a performs.
  std::vector<long> update(const std::vector<int>& state,
                           const std::vector<std::string>& taken) const;

  long label_value(int player, const std::string& renamed_label,
                   const std::vector<int>& state) const;
  long availability(int player, const std::string& renamed_action,
                    const std::vector<int>& state) const;

  /// Label names of player, renamed, in declaration order.
  std::vector<std::string> labels_of(int player) const;
  std::vector<std::string> actions_of(int player) const;

 private:
  struct Player {
    std::string name;
    const lcgs::TemplateDecl* tmpl;
    std::map<std::string, lcgs::ExprRef> relabel;
    std::map<std::string, std::string> renamed;   // declared -> instance name
    std::map<std::string, int> var_slot;          // renamed var -> global slot
  };

  struct Env {
    const std::vector<int>* state;
    const std::vector<std::string>* taken;  // nullptr outside updates
    int player;
  };

  long eval(const lcgs::Expr& e, const Env& env) const;
  long resolve(const std::string& qualifier, const std::string& name,
               const Env& env, SourcePos pos) const;
  long const_value(const std::string& name) const;
  std::string rename(const Player& p, const std::string& declared) const;
  int player_index(const std::string& name) const;

  const lcgs::Program& program_;
  std::vector<Player> players_;
  std::vector<std::string> var_names_;
  std::vector<std::pair<int, int>> var_owner_decl_;  // slot -> (player, decl idx)
};

}  // namespace cgmc::test
