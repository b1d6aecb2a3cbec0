#pragma once

#include <iosfwd>
#include <string>

namespace cgmc::cli {

struct RunConfig {
  std::string model_path;
  std::string formula_path;
  enum class Engine { Local, Global } engine = Engine::Local;
  std::string strategy = "bfs";
  bool strategy_explicit = false;  // --strategy given on the command line
  int threads = 1;
  bool witness = false;
  bool stats = false;
  // graph subcommand
  bool edg = false;
  bool move_labels = true;
};

/// Checks one query and prints `Result: true|false`. Exit 0 on a completed
/// check regardless of verdict; 1 on input errors (diagnostics on err);
/// 2 on model/resource errors at runtime.
int cmd_solver(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Prints the reachable CGS as dot, or with `edg` set (plus a formula) the
/// explored dependency graph.
int cmd_graph(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cgmc::cli
