#include <CLI11.hpp>
#include <iostream>

#include "cgmc/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cgmc: on-the-fly model checker for coalition properties of "
               "concurrent games"};
  app.require_subcommand(1);

  cgmc::cli::RunConfig config;

  CLI::App* solver = app.add_subcommand("solver", "check a query against a model");
  solver->add_option("-m,--model", config.model_path, "LCGS model file")->required();
  solver->add_option("-f,--formula", config.formula_path, "query file")->required();
  std::string engine = "local";
  solver->add_option("--engine", engine, "local or global")
      ->check(CLI::IsMember({"local", "global"}));
  auto* strat_opt = solver->add_option("--strategy", config.strategy,
                                       "search strategy: bfs dfs dhs ihs lps lrs");
  solver->add_option("--threads", config.threads, "worker threads (local engine)");
  solver->add_flag("--witness", config.witness, "print a strategy witness");
  solver->add_flag("--stats", config.stats, "print run statistics");

  CLI::App* graph = app.add_subcommand("graph", "export dot graphs");
  graph->add_option("-m,--model", config.model_path, "LCGS model file")->required();
  graph->add_option("-f,--formula", config.formula_path, "query file (with --edg)");
  graph->add_flag("--edg", config.edg, "export the dependency graph instead");
  bool no_move_labels = false;
  graph->add_flag("--no-move-labels", no_move_labels, "omit move-vector labels");

  CLI11_PARSE(app, argc, argv);

  if (solver->parsed()) {
    config.engine = engine == "global" ? cgmc::cli::RunConfig::Engine::Global
                                       : cgmc::cli::RunConfig::Engine::Local;
    config.strategy_explicit = strat_opt->count() > 0;
    return cgmc::cli::cmd_solver(config, std::cout, std::cerr);
  }
  config.move_labels = !no_move_labels;
  return cgmc::cli::cmd_graph(config, std::cout, std::cerr);
}
