#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ndeq/dsl.hpp"
#include "ndeq/oracle.hpp"

namespace ndeq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitCapExceeded = 3;
inline constexpr int kExitIo = 4;

struct SolveOptions {
  strategic::BRVariant variant = strategic::BRVariant::FULL;
  bool trace = false;
  bool json = false;
};

// Display names per profile axis: the agent name for one-shot games,
// `agent@node` for multigames. `strategies[axis]` are the cell's own names.
struct AxisNaming {
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> strategies;
};

AxisNaming axis_naming(const GameDocument& doc);

// One-shot: `V: {v1,v2}  H: {h1,h2}`. Multigames: one such line per node,
// prefixed with the node name. No trailing newline.
std::string format_equilibrium(const GameDocument& doc,
                               const lattice::NdProfile& eq);

// `round 1: removed V:v4 V:v5 H:h5` per round; the last round prints
// `round N: fixpoint`. No trailing newline.
std::string format_trace(const GameDocument& doc,
                         const lattice::SolveTrace& trace);

// Commands take the game source text; file handling stays in the binary.
// Diagnostics go to `err`, results to `out`; the return value is the exit
// status (see the kExit* constants).
int cmd_solve(const std::string& text, const SolveOptions& opts,
              std::ostream& out, std::ostream& err);

// Lists pure Nash profiles of a one-shot game, `none` if there are none.
int cmd_nash(const std::string& text, std::ostream& out, std::ostream& err);

// Exhaustively enumerates equilibria and cross-checks the engine's result.
int cmd_oracle(const std::string& text, strategic::BRVariant variant,
               std::size_t cap, std::ostream& out, std::ostream& err);

// Aggregate equilibrium payoff over the 256-game sign class. Writes the
// per-game CSV to `csv_path` unless it is empty.
int cmd_classg(const std::string& csv_path, std::ostream& out,
               std::ostream& err);

}  // namespace ndeq::cli
