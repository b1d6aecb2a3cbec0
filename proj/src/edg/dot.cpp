#include "cgmc/edg/dot.hpp"

#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "cgmc/error.hpp"

namespace cgmc::edg {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string dot_cgs(const cgs::GameStructure& game, bool move_labels,
                    size_t max_states) {
  std::ostringstream os;
  os << "digraph cgs {\n";
  os << "  node [shape=box];\n";

  std::deque<cgs::StateId> frontier{game.initial_state()};
  std::set<cgs::StateId> seen{game.initial_state()};
  std::vector<cgs::StateId> order;
  while (!frontier.empty()) {
    cgs::StateId q = frontier.front();
    frontier.pop_front();
    order.push_back(q);
    if (order.size() > max_states)
      throw Error(ErrorKind::Resource,
                  "reachable state space exceeds " + std::to_string(max_states));
    for (const auto& v : cgs::move_vectors(game, q)) {
      cgs::StateId s = game.transition(q, v);
      if (seen.insert(s).second) frontier.push_back(s);
    }
  }

  for (cgs::StateId q : order)
    os << "  s" << q << " [label=\"" << escape(game.describe_state(q)) << "\"];\n";
  for (cgs::StateId q : order) {
    // One edge per distinct successor; collect its move vectors as labels.
    std::map<cgs::StateId, std::vector<std::string>> succ;
    for (const auto& v : cgs::move_vectors(game, q)) {
      cgs::StateId s = game.transition(q, v);
      if (!move_labels) {
        succ[s];
        continue;
      }
      std::string moves = "(";
      for (int a = 0; a < game.player_count(); ++a) {
        if (a) moves += ",";
        moves += game.move_name(q, a, v[a]);
      }
      moves += ")";
      succ[s].push_back(std::move(moves));
    }
    for (const auto& [s, labels] : succ) {
      os << "  s" << q << " -> s" << s;
      if (move_labels && !labels.empty()) {
        std::string l;
        for (size_t i = 0; i < labels.size(); ++i) {
          if (i) l += "\\n";
          l += labels[i];
        }
        os << " [label=\"" << escape(l) << "\"]";
      }
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string dot_edg(const ConfigStore& configs, const solver::Graph& graph) {
  std::ostringstream os;
  os << "digraph edg {\n";
  os << "  node [shape=box];\n";
  for (ConfigId c = 0; c < graph.config_count; ++c)
    os << "  c" << c << " [label=\"" << escape(configs.describe(c)) << "\"];\n";
  for (size_t i = 0; i < graph.hyper.size(); ++i) {
    const auto& e = graph.hyper[i];
    os << "  j" << i << " [shape=point, label=\"\"];\n";
    os << "  c" << e.source << " -> j" << i << " [arrowhead=none];\n";
    for (ConfigId t : e.targets) os << "  j" << i << " -> c" << t << ";\n";
  }
  for (const auto& e : graph.negation)
    os << "  c" << e.source << " -> c" << e.target << " [style=dashed];\n";
  os << "}\n";
  return os.str();
}

}  // namespace cgmc::edg
