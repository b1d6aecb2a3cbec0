#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cgmc/atl/formula.hpp"
#include "cgmc/cgs/game.hpp"
#include "cgmc/edg/edg.hpp"

namespace cgmc::solver {

/// Four-point lattice of the local algorithm. Values only ever move upward:
/// Bottom -> Unknown -> {Zero | One}; Zero and One are final and
/// incomparable.
enum class AssignVal : uint8_t { Bottom = 0, Unknown = 1, Zero = 2, One = 3 };

/// True when moving from `a` to `b` never goes down in the lattice order.
inline bool lattice_upward(AssignVal a, AssignVal b) {
  if (a == b) return true;
  if (a == AssignVal::Bottom) return true;
  if (a == AssignVal::Unknown) return b == AssignVal::Zero || b == AssignVal::One;
  return false;  // Zero/One are final
}

struct LocalOptions {
  int workers = 1;
  std::string strategy = "bfs";
  bool want_witness = false;
  size_t max_configs = 5000000;
};

struct LocalStats {
  uint64_t configs_explored = 0;
  uint64_t edges_processed = 0;
  uint64_t messages_sent = 0;
  uint64_t release_rounds = 0;
  uint64_t downward_transitions = 0;  // must stay 0; counted for verification
  bool early_termination = false;     // root certified with work still queued
};

struct WitnessMove {
  int player;
  int move;  // 1-based move index at that state
  std::string action;
};

struct WitnessEntry {
  cgs::StateId state;
  std::vector<WitnessMove> moves;
};

/// Partial strategy certifying a satisfied enforce next/until/eventually
/// formula: for each mapped state, the coalition's committed moves.
struct Witness {
  std::string formula;
  std::vector<WitnessEntry> entries;
};

struct LocalResult {
  bool verdict = false;
  LocalStats stats;
  std::optional<Witness> witness;
  std::string witness_note;  // set when a requested witness is unavailable
};

/// On-the-fly distributed check of <initial state, phi>. Accepts sugar
/// formulas (desugared internally). Runs `workers` threads that each own the
/// configurations hashing to them; verdicts are identical for every worker
/// count and strategy. Terminates as soon as the root is certain.
LocalResult check_local(const cgs::GameStructure& game, atl::FormulaStore& formulas,
                        atl::FormulaId phi, const LocalOptions& options = {});

}  // namespace cgmc::solver
