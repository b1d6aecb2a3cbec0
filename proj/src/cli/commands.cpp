#include "cgmc/cli/commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "cgmc/cgs/lcgs_game.hpp"
#include "cgmc/edg/dot.hpp"
#include "cgmc/error.hpp"
#include "cgmc/solver/global.hpp"
#include "cgmc/solver/local.hpp"
#include "cgmc/strat/search.hpp"

namespace cgmc::cli {

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Model:
    case ErrorKind::Resource:
      return 2;
    default:
      return 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Resolve, "cannot read file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void validate(const RunConfig& config) {
  if (config.threads < 1)
    throw Error(ErrorKind::Unsupported, "--threads must be >= 1");
  if (!strat::is_strategy_name(config.strategy))
    throw Error(ErrorKind::Unsupported,
                "unknown strategy '" + config.strategy + "'");
  if (config.strategy_explicit && config.engine == RunConfig::Engine::Global)
    throw Error(ErrorKind::Unsupported,
                "--strategy only applies to the local engine");
}

void print_witness(std::ostream& out, const cgs::GameStructure& game,
                   const solver::LocalResult& result) {
  if (!result.witness) {
    out << (result.witness_note.empty() ? "witness unavailable" : result.witness_note)
        << "\n";
    return;
  }
  out << "Witness: " << result.witness->formula << "\n";
  for (const auto& entry : result.witness->entries) {
    out << "state" << game.describe_state(entry.state) << " : ";
    for (size_t i = 0; i < entry.moves.size(); ++i) {
      if (i) out << ",";
      out << game.player_name(entry.moves[i].player) << "=" << entry.moves[i].action;
    }
    out << "\n";
  }
}

}  // namespace

int cmd_solver(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    cgs::LcgsGame game(lcgs::compile(read_file(config.model_path)));
    atl::FormulaStore formulas;
    atl::FormulaId phi =
        atl::parse_formula(read_file(config.formula_path), game, formulas);

    if (config.engine == RunConfig::Engine::Global) {
      atl::FormulaId core = formulas.desugar(phi);
      edg::ConfigStore configs(game, formulas);
      edg::Context ctx{game, formulas, configs};
      solver::GlobalRun run = solver::run_global(ctx, game.initial_state(), core);
      out << "Result: " << (run.verdict ? "true" : "false") << "\n";
      if (config.witness)
        out << "witness unavailable: the global engine does not record "
               "certifying moves\n";
      if (config.stats) {
        out << "configurations_built=" << run.graph.config_count << "\n";
        out << "hyper_edges=" << run.graph.hyper.size() << "\n";
        out << "negation_edges=" << run.graph.negation.size() << "\n";
        out << "components=" << run.graph.graph_dist + 1 << "\n";
      }
    } else {
      solver::LocalOptions opt;
      opt.workers = config.threads;
      opt.strategy = config.strategy;
      opt.want_witness = config.witness;
      solver::LocalResult result = solver::check_local(game, formulas, phi, opt);
      out << "Result: " << (result.verdict ? "true" : "false") << "\n";
      if (config.witness) print_witness(out, game, result);
      if (config.stats) {
        out << "configurations_explored=" << result.stats.configs_explored << "\n";
        out << "edges_processed=" << result.stats.edges_processed << "\n";
        out << "messages_sent=" << result.stats.messages_sent << "\n";
        out << "release_rounds=" << result.stats.release_rounds << "\n";
      }
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_graph(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    cgs::LcgsGame game(lcgs::compile(read_file(config.model_path)));
    if (!config.edg) {
      out << edg::dot_cgs(game, config.move_labels);
      return 0;
    }
    if (config.formula_path.empty())
      throw Error(ErrorKind::Unsupported, "--edg requires a formula (-f)");
    atl::FormulaStore formulas;
    atl::FormulaId phi =
        atl::parse_formula(read_file(config.formula_path), game, formulas);
    atl::FormulaId core = formulas.desugar(phi);
    edg::ConfigStore configs(game, formulas);
    edg::Context ctx{game, formulas, configs};
    edg::ConfigId root = configs.intern(game.initial_state(), core);
    solver::Graph graph = solver::build_graph(ctx, root);
    out << edg::dot_edg(configs, graph);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cgmc::cli
