#pragma once

#include <boost/rational.hpp>

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ndeq/core.hpp"
#include "ndeq/lattice.hpp"
#include "ndeq/multigame.hpp"
#include "ndeq/strategic.hpp"

namespace ndeq::oracle {

using Rational = boost::rational<long long>;

// "3/8"; integers print without the denominator.
std::string rational_str(const Rational& r);

inline constexpr std::size_t kDefaultProfileCap = 1'000'000;

// Number of non-bottom profiles of the shape. Throws CapExceeded when it
// passes `cap`.
std::size_t nd_profile_count(const lattice::ProfileShape& shape,
                             std::size_t cap = kDefaultProfileCap);

// Calls `fn` with every non-bottom profile exactly once, in a fixed order
// (cell subsets count up, last axis fastest).
void enumerate_nd_profiles(
    const std::shared_ptr<const lattice::ProfileShape>& shape,
    const std::function<void(const lattice::NdProfile&)>& fn,
    std::size_t cap = kDefaultProfileCap);

std::vector<lattice::NdProfile> all_nd_profiles(
    const std::shared_ptr<const lattice::ProfileShape>& shape,
    std::size_t cap = kDefaultProfileCap);

// Exhaustive equilibrium lists, in enumeration order. Best responses are
// memoized per (agent, opponent cells), which keeps the scan near-linear in
// the profile count for small games.
std::vector<lattice::NdProfile> all_equilibria(const strategic::StrategicGame& g,
                                               strategic::BRVariant v,
                                               std::size_t cap = kDefaultProfileCap);
std::vector<lattice::NdProfile> all_equilibria(const multigame::MultiGame& mg,
                                               std::size_t cap = kDefaultProfileCap);

struct EquilibriumReport {
  std::string game;
  std::string variant;
  lattice::NdProfile engine_result;
  std::vector<lattice::NdProfile> equilibria;
  std::vector<std::pair<std::string, bool>> checks;

  bool all_passed() const {
    for (const auto& [name, ok] : checks)
      if (!ok) return false;
    return true;
  }
};

// Runs the engine and cross-validates it against the exhaustive scan:
//   solve_completed    engine returned without collapsing
//   engine_in_equilibria   membership of the engine result
//   engine_equals_union    (monotone variants) engine = cell-wise union of
//                          all equilibria, i.e. the greatest equilibrium
//   union_closed           (monotone variants) pairwise cartesian_union of
//                          equilibria is again an equilibrium
// The monotone checks run for BR3/BR4 and for multigames.
EquilibriumReport verify_engine(const strategic::StrategicGame& g,
                                strategic::BRVariant v,
                                std::size_t cap = kDefaultProfileCap);
EquilibriumReport verify_engine(const multigame::MultiGame& mg,
                                std::size_t cap = kDefaultProfileCap);

// One 2x2 game with every payoff in {-1,+1}: 8 independent sign choices,
// encoded as 8 characters in cell-major order (v1h1, v1h2, v2h1, v2h2), the
// v coordinate before the h coordinate.
struct ClassGRecord {
  std::string signs;
  StrategySet eq_v = 0;
  StrategySet eq_h = 0;
  Rational mean_v;
  Rational mean_h;
};

struct ClassGStats {
  std::vector<ClassGRecord> games;      // all 256, in encoding order
  Rational aggregate_v, aggregate_h;    // mean over games of per-game means
  Rational baseline_v, baseline_h;      // mean over all cells of all games
};

// Solves every game of the class with the FULL variant and aggregates the
// per-agent mean payoff over the equilibrium product, in exact arithmetic.
ClassGStats class_g_mean();

// One row per game (signs, equilibrium cells, per-agent mean) plus a summary
// line: 257 lines, byte-stable across runs.
std::string class_g_csv(const ClassGStats& stats);

}  // namespace ndeq::oracle
