#include "ndeq/oracle.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace ndeq::oracle {

std::string rational_str(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

std::size_t nd_profile_count(const lattice::ProfileShape& shape,
                             std::size_t cap) {
  std::size_t count = 1;
  for (const auto& axis : shape.axes()) {
    // count stays <= cap before the multiply, so no overflow on 64 bits.
    count *= (std::size_t{1} << axis.universe_size) - 1;
    if (count > cap)
      throw CapExceeded("profile space exceeds cap of " + std::to_string(cap));
  }
  return count;
}

namespace {

// Runs `fn` over every assignment of non-empty cell masks.
template <typename Fn>
void scan_profiles(const lattice::ProfileShape& shape, Fn&& fn) {
  std::vector<StrategySet> cells(shape.size(), 1);
  for (;;) {
    fn(cells);
    std::size_t i = cells.size();
    while (i-- > 0) {
      if (++cells[i] <= full_strategy_set(shape.axis(i).universe_size)) break;
      cells[i] = 1;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
}

struct CellsHash {
  std::size_t operator()(const std::vector<StrategySet>& cells) const {
    std::size_t h = cells.size();
    for (StrategySet c : cells) h = h * 1000003u + c;
    return h;
  }
};

}  // namespace

void enumerate_nd_profiles(
    const std::shared_ptr<const lattice::ProfileShape>& shape,
    const std::function<void(const lattice::NdProfile&)>& fn, std::size_t cap) {
  nd_profile_count(*shape, cap);
  scan_profiles(*shape, [&](const std::vector<StrategySet>& cells) {
    fn(lattice::NdProfile(shape, cells));
  });
}

std::vector<lattice::NdProfile> all_nd_profiles(
    const std::shared_ptr<const lattice::ProfileShape>& shape, std::size_t cap) {
  std::vector<lattice::NdProfile> out;
  out.reserve(nd_profile_count(*shape, cap));
  enumerate_nd_profiles(
      shape, [&](const lattice::NdProfile& p) { out.push_back(p); }, cap);
  return out;
}

std::vector<lattice::NdProfile> all_equilibria(const strategic::StrategicGame& g,
                                               strategic::BRVariant v,
                                               std::size_t cap) {
  const auto& shape = g.shape();
  nd_profile_count(*shape, cap);

  // br_memo[a]: opponents' cells (own slot zeroed) -> best response set.
  std::vector<std::unordered_map<std::vector<StrategySet>, StrategySet, CellsHash>>
      br_memo(g.agent_count());

  std::vector<lattice::NdProfile> out;
  scan_profiles(*shape, [&](const std::vector<StrategySet>& cells) {
    for (AgentId a = 0; a < g.agent_count(); ++a) {
      std::vector<StrategySet> key = cells;
      key[a] = 0;
      auto it = br_memo[a].find(key);
      if (it == br_memo[a].end()) {
        StrategySet br =
            strategic::best_response(g, a, lattice::NdProfile(shape, cells), v);
        it = br_memo[a].emplace(std::move(key), br).first;
      }
      if (cells[a] & ~it->second) return;
    }
    out.emplace_back(shape, cells);
  });
  return out;
}

std::vector<lattice::NdProfile> all_equilibria(const multigame::MultiGame& mg,
                                               std::size_t cap) {
  const auto& shape = mg.shape();
  nd_profile_count(*shape, cap);

  std::vector<std::unordered_map<std::vector<StrategySet>,
                                 std::vector<StrategySet>, CellsHash>>
      br_memo(mg.agent_count());

  std::vector<lattice::NdProfile> out;
  scan_profiles(*shape, [&](const std::vector<StrategySet>& cells) {
    for (AgentId a = 0; a < mg.agent_count(); ++a) {
      std::vector<StrategySet> key = cells;
      for (NodeId n = 0; n < mg.node_count(); ++n) key[mg.axis_of(a, n)] = 0;
      auto it = br_memo[a].find(key);
      if (it == br_memo[a].end()) {
        auto br = multigame::agent_best_response(
            mg, a, lattice::NdProfile(shape, cells));
        it = br_memo[a].emplace(std::move(key), std::move(br)).first;
      }
      for (NodeId n = 0; n < mg.node_count(); ++n)
        if (cells[mg.axis_of(a, n)] & ~it->second[n]) return;
    }
    out.emplace_back(shape, cells);
  });
  return out;
}

namespace {

// The checks shared by both game kinds. `is_eq` decides membership for a
// candidate profile, `monotone` switches on the greatest-equilibrium checks.
EquilibriumReport build_report(
    std::string game, std::string variant, lattice::NdProfile engine,
    bool completed, std::vector<lattice::NdProfile> equilibria, bool monotone,
    const std::function<bool(const lattice::NdProfile&)>& is_eq) {
  EquilibriumReport report{std::move(game), std::move(variant),
                           std::move(engine), std::move(equilibria),
                           {}};
  report.checks.emplace_back("solve_completed", completed);

  bool member = false;
  for (const auto& eq : report.equilibria)
    if (eq == report.engine_result) {
      member = true;
      break;
    }
  report.checks.emplace_back("engine_in_equilibria", completed && member);

  if (monotone && !report.equilibria.empty()) {
    lattice::NdProfile everything = report.equilibria.front();
    for (const auto& eq : report.equilibria)
      everything = strategic::cartesian_union(everything, eq);
    report.checks.emplace_back("engine_equals_union",
                               completed && everything == report.engine_result);

    // Distinct pairwise unions only; the pair scan itself is quadratic in
    // the equilibrium count but each union is checked once.
    std::unordered_set<std::vector<StrategySet>, CellsHash> seen;
    bool closed = true;
    for (std::size_t i = 0; i < report.equilibria.size() && closed; ++i)
      for (std::size_t j = i + 1; j < report.equilibria.size() && closed; ++j) {
        lattice::NdProfile u = strategic::cartesian_union(report.equilibria[i],
                                                          report.equilibria[j]);
        if (!seen.insert(u.cells()).second) continue;
        closed = is_eq(u);
      }
    report.checks.emplace_back("union_closed", closed);
  }
  return report;
}

}  // namespace

EquilibriumReport verify_engine(const strategic::StrategicGame& g,
                                strategic::BRVariant v, std::size_t cap) {
  auto equilibria = all_equilibria(g, v, cap);
  bool completed = true;
  lattice::NdProfile engine = lattice::NdProfile::top(g.shape());
  try {
    engine = strategic::solve(g, v).first;
  } catch (const lattice::CollapsedToBottom& e) {
    completed = false;
    if (!e.trace.steps.empty()) engine = e.trace.steps.back();
  }
  bool monotone =
      v == strategic::BRVariant::BR3 || v == strategic::BRVariant::BR4;
  return build_report(
      g.name(), strategic::variant_name(v), std::move(engine), completed,
      std::move(equilibria), monotone,
      [&](const lattice::NdProfile& p) { return is_nd_equilibrium(g, p, v); });
}

EquilibriumReport verify_engine(const multigame::MultiGame& mg,
                                std::size_t cap) {
  auto equilibria = all_equilibria(mg, cap);
  bool completed = true;
  lattice::NdProfile engine = lattice::NdProfile::top(mg.shape());
  try {
    engine = multigame::solve_multi(mg).first;
  } catch (const lattice::CollapsedToBottom& e) {
    completed = false;
    if (!e.trace.steps.empty()) engine = e.trace.steps.back();
  }
  return build_report(mg.name(), "seq", std::move(engine), completed,
                      std::move(equilibria), true,
                      [&](const lattice::NdProfile& p) {
                        return is_nd_equilibrium_multi(mg, p);
                      });
}

ClassGStats class_g_mean() {
  ClassGStats stats;
  stats.games.reserve(256);
  stats.aggregate_v = stats.aggregate_h = 0;
  stats.baseline_v = stats.baseline_h = 0;

  for (unsigned code = 0; code < 256; ++code) {
    std::vector<std::vector<int>> payoffs(4, std::vector<int>(2));
    std::string signs(8, '+');
    for (unsigned bit = 0; bit < 8; ++bit) {
      int value = (code >> bit) & 1u ? 1 : -1;
      payoffs[bit / 2][bit % 2] = value;
      signs[bit] = value > 0 ? '+' : '-';
    }
    strategic::StrategicGame game = strategic::StrategicGame::from_payoffs(
        "g" + std::to_string(code), {"v", "h"}, {{"v1", "v2"}, {"h1", "h2"}},
        payoffs);

    // Per-agent elimination of strategies dominated over the full context
    // set (BR1). The restricted-context conditions would let one agent's
    // column collapse cascade into the other's rows, which skews the class
    // mean to 29/64; the 3/8 result is the decoupled construction.
    lattice::NdProfile eq = strategic::solve(game, strategic::BRVariant::BR1).first;

    long long sum_v = 0, sum_h = 0;
    for (StrategyId i : set_elements(eq.cell(0)))
      for (StrategyId j : set_elements(eq.cell(1))) {
        const auto& cell = payoffs[i * 2 + j];
        sum_v += cell[0];
        sum_h += cell[1];
      }
    long long pure = static_cast<long long>(eq.pure_count());
    ClassGRecord record{std::move(signs), eq.cell(0), eq.cell(1),
                        Rational(sum_v, pure), Rational(sum_h, pure)};

    stats.aggregate_v += record.mean_v;
    stats.aggregate_h += record.mean_h;
    for (const auto& cell : payoffs) {
      stats.baseline_v += cell[0];
      stats.baseline_h += cell[1];
    }
    stats.games.push_back(std::move(record));
  }

  stats.aggregate_v /= 256;
  stats.aggregate_h /= 256;
  stats.baseline_v /= 256 * 4;
  stats.baseline_h /= 256 * 4;
  return stats;
}

std::string class_g_csv(const ClassGStats& stats) {
  std::string out;
  auto names = [](StrategySet cell, const char* prefix) {
    std::string s;
    for (StrategyId i : set_elements(cell)) {
      if (!s.empty()) s += " ";
      s += prefix + std::to_string(i + 1);
    }
    return s;
  };
  for (const auto& record : stats.games) {
    out += record.signs + "," + names(record.eq_v, "v") + "," +
           names(record.eq_h, "h") + "," + rational_str(record.mean_v) + "," +
           rational_str(record.mean_h) + "\n";
  }
  out += "aggregate,,," + rational_str(stats.aggregate_v) + "," +
         rational_str(stats.aggregate_h) + "\n";
  return out;
}

}  // namespace ndeq::oracle
