#include "cgmc/atl/formula.hpp"

#include <algorithm>
#include <sstream>

#include "cgmc/error.hpp"

namespace cgmc::atl {

bool is_core(Kind k) {
  switch (k) {
    case Kind::True:
    case Kind::Prop:
    case Kind::Not:
    case Kind::Or:
    case Kind::EnforceNext:
    case Kind::EnforceUntil:
    case Kind::DespiteUntil:
      return true;
    default:
      return false;
  }
}

FormulaId FormulaStore::intern(Node n) {
  auto key = std::make_tuple(static_cast<uint8_t>(n.kind), n.a, n.b, n.players.bits,
                             n.prop);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  FormulaId id = static_cast<FormulaId>(nodes_.size());
  nodes_.push_back(n);
  index_.emplace(key, id);
  return id;
}

FormulaId FormulaStore::mk_true() {
  Node n{};
  n.kind = Kind::True;
  n.size = 1;
  n.neg_depth = 0;
  return intern(n);
}

FormulaId FormulaStore::mk_prop(int prop) {
  Node n{};
  n.kind = Kind::Prop;
  n.prop = prop;
  n.size = 1;
  n.neg_depth = 0;
  return intern(n);
}

FormulaId FormulaStore::mk_not(FormulaId f) {
  Node n{};
  n.kind = Kind::Not;
  n.a = f;
  n.size = 1 + nodes_[f].size;
  n.neg_depth = nodes_[f].neg_depth + 1;
  return intern(n);
}

FormulaId FormulaStore::mk_or(FormulaId a, FormulaId b) {
  Node n{};
  n.kind = Kind::Or;
  n.a = a;
  n.b = b;
  n.size = 1 + nodes_[a].size + nodes_[b].size;
  n.neg_depth = std::max(nodes_[a].neg_depth, nodes_[b].neg_depth);
  return intern(n);
}

FormulaId FormulaStore::mk_and(FormulaId a, FormulaId b) {
  Node n{};
  n.kind = Kind::And;
  n.a = a;
  n.b = b;
  n.size = 1 + nodes_[a].size + nodes_[b].size;
  n.neg_depth = std::max(nodes_[a].neg_depth, nodes_[b].neg_depth) + 2;
  return intern(n);
}

FormulaId FormulaStore::mk_enforce_next(PlayerSet A, FormulaId f) {
  Node n{};
  n.kind = Kind::EnforceNext;
  n.players = A;
  n.a = f;
  n.size = 1 + nodes_[f].size;
  n.neg_depth = nodes_[f].neg_depth;
  return intern(n);
}

FormulaId FormulaStore::mk_enforce_until(PlayerSet A, FormulaId a, FormulaId b) {
  Node n{};
  n.kind = Kind::EnforceUntil;
  n.players = A;
  n.a = a;
  n.b = b;
  n.size = 1 + nodes_[a].size + nodes_[b].size;
  n.neg_depth = std::max(nodes_[a].neg_depth, nodes_[b].neg_depth);
  return intern(n);
}

FormulaId FormulaStore::mk_despite_until(PlayerSet A, FormulaId a, FormulaId b) {
  Node n{};
  n.kind = Kind::DespiteUntil;
  n.players = A;
  n.a = a;
  n.b = b;
  n.size = 1 + nodes_[a].size + nodes_[b].size;
  n.neg_depth = std::max(nodes_[a].neg_depth, nodes_[b].neg_depth);
  return intern(n);
}

FormulaId FormulaStore::mk_enforce_eventually(PlayerSet A, FormulaId f) {
  Node n{};
  n.kind = Kind::EnforceEventually;
  n.players = A;
  n.a = f;
  n.size = 1 + nodes_[f].size;
  n.neg_depth = nodes_[f].neg_depth;
  return intern(n);
}

FormulaId FormulaStore::mk_enforce_invariant(PlayerSet A, FormulaId f) {
  Node n{};
  n.kind = Kind::EnforceInvariant;
  n.players = A;
  n.a = f;
  n.size = 1 + nodes_[f].size;
  n.neg_depth = nodes_[f].neg_depth + 2;
  return intern(n);
}

FormulaId FormulaStore::mk_despite_next(PlayerSet A, FormulaId f) {
  Node n{};
  n.kind = Kind::DespiteNext;
  n.players = A;
  n.a = f;
  n.size = 1 + nodes_[f].size;
  n.neg_depth = nodes_[f].neg_depth + 2;
  return intern(n);
}

FormulaId FormulaStore::mk_despite_eventually(PlayerSet A, FormulaId f) {
  Node n{};
  n.kind = Kind::DespiteEventually;
  n.players = A;
  n.a = f;
  n.size = 1 + nodes_[f].size;
  n.neg_depth = nodes_[f].neg_depth;
  return intern(n);
}

FormulaId FormulaStore::mk_despite_invariant(PlayerSet A, FormulaId f) {
  Node n{};
  n.kind = Kind::DespiteInvariant;
  n.players = A;
  n.a = f;
  n.size = 1 + nodes_[f].size;
  n.neg_depth = nodes_[f].neg_depth + 2;
  return intern(n);
}

FormulaId FormulaStore::desugar(FormulaId f) {
  auto memo = desugar_memo_.find(f);
  if (memo != desugar_memo_.end()) return memo->second;
  const Node n = nodes_[f];
  FormulaId out;
  switch (n.kind) {
    case Kind::True:
    case Kind::Prop:
      out = f;
      break;
    case Kind::Not:
      out = mk_not(desugar(n.a));
      break;
    case Kind::Or:
      out = mk_or(desugar(n.a), desugar(n.b));
      break;
    case Kind::And:
      out = mk_not(mk_or(mk_not(desugar(n.a)), mk_not(desugar(n.b))));
      break;
    case Kind::EnforceNext:
      out = mk_enforce_next(n.players, desugar(n.a));
      break;
    case Kind::EnforceUntil:
      out = mk_enforce_until(n.players, desugar(n.a), desugar(n.b));
      break;
    case Kind::DespiteUntil:
      out = mk_despite_until(n.players, desugar(n.a), desugar(n.b));
      break;
    case Kind::EnforceEventually:
      out = mk_enforce_until(n.players, mk_true(), desugar(n.a));
      break;
    case Kind::DespiteEventually:
      out = mk_despite_until(n.players, mk_true(), desugar(n.a));
      break;
    case Kind::EnforceInvariant:
      out = mk_not(mk_despite_until(n.players, mk_true(), mk_not(desugar(n.a))));
      break;
    case Kind::DespiteInvariant:
      out = mk_not(mk_enforce_until(n.players, mk_true(), mk_not(desugar(n.a))));
      break;
    case Kind::DespiteNext:
      out = mk_not(mk_enforce_next(n.players, mk_not(desugar(n.a))));
      break;
    default:
      throw Error(ErrorKind::Unsupported, "unknown formula kind");
  }
  desugar_memo_.emplace(f, out);
  return out;
}

namespace {

void players_to_string(PlayerSet A, const cgs::GameStructure* g, std::ostream& os) {
  bool first = true;
  for (int a : A.members()) {
    if (!first) os << ", ";
    first = false;
    if (g)
      os << g->player_name(a);
    else
      os << "p" << (a + 1);
  }
}

}  // namespace

std::string FormulaStore::to_string(FormulaId f, const cgs::GameStructure* g) const {
  const Node& n = nodes_[f];
  std::ostringstream os;
  auto quant = [&](const char* open, const char* close) {
    os << open;
    players_to_string(n.players, g, os);
    os << close << ' ';
  };
  switch (n.kind) {
    case Kind::True:
      return "true";
    case Kind::Prop:
      return g ? g->prop_name(n.prop) : "prop" + std::to_string(n.prop);
    case Kind::Not:
      return "!(" + to_string(n.a, g) + ")";
    case Kind::Or:
      return "(" + to_string(n.a, g) + " || " + to_string(n.b, g) + ")";
    case Kind::And:
      return "(" + to_string(n.a, g) + " && " + to_string(n.b, g) + ")";
    case Kind::EnforceNext:
      quant("<<", ">>");
      os << "X " << to_string(n.a, g);
      return os.str();
    case Kind::EnforceUntil:
      quant("<<", ">>");
      os << "(" << to_string(n.a, g) << " U " << to_string(n.b, g) << ")";
      return os.str();
    case Kind::DespiteUntil:
      quant("[[", "]]");
      os << "(" << to_string(n.a, g) << " U " << to_string(n.b, g) << ")";
      return os.str();
    case Kind::EnforceEventually:
      quant("<<", ">>");
      os << "F " << to_string(n.a, g);
      return os.str();
    case Kind::EnforceInvariant:
      quant("<<", ">>");
      os << "G " << to_string(n.a, g);
      return os.str();
    case Kind::DespiteNext:
      quant("[[", "]]");
      os << "X " << to_string(n.a, g);
      return os.str();
    case Kind::DespiteEventually:
      quant("[[", "]]");
      os << "F " << to_string(n.a, g);
      return os.str();
    case Kind::DespiteInvariant:
      quant("[[", "]]");
      os << "G " << to_string(n.a, g);
      return os.str();
  }
  return "?";
}

}  // namespace cgmc::atl
