// Acceptance gate for the equilibrium engine: eight numbered criteria, one
// PASS/FAIL line each, non-zero exit when any fails. All value comparisons
// are exact (bitmasks, integers, rationals); the only tolerances are the
// per-criterion wall-clock budgets below.
//
// Usage: acceptance <games-dir>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ndeq/cli.hpp"
#include "ndeq/oracle.hpp"
#include "testutil.hpp"

using namespace ndeq;
using lattice::NdProfile;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kBudgetReductionMs = 1000.0;
constexpr double kBudgetClassGMs = 5000.0;
constexpr double kBudgetGraphMs = 1000.0;
constexpr double kBudgetNoNashMs = 1000.0;
constexpr double kBudgetOracleMs = 60000.0;

using Removed = std::vector<std::vector<std::pair<std::size_t, StrategyId>>>;

struct Criterion {
  bool ok = true;
  int noted = 0;
  std::string why;

  void fail(const std::string& msg) {
    ok = false;
    if (noted == 3) why += "; ...";
    if (noted >= 3) {
      ++noted;
      return;
    }
    if (!why.empty()) why += "; ";
    why += msg;
    ++noted;
  }

  void expect(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
  }
};

int failures = 0;

void run(int idx, const std::string& label, double budget_ms,
         const std::function<void(Criterion&)>& body) {
  Criterion c;
  auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.fail(std::string("unexpected exception: ") + e.what());
  }
  double ms =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  if (budget_ms > 0 && ms >= budget_ms)
    c.fail("runtime " + std::to_string(static_cast<long>(ms)) +
           " ms exceeds the " + std::to_string(static_cast<long>(budget_ms)) +
           " ms budget");
  std::cout << (c.ok ? "PASS" : "FAIL") << "  " << idx << ". " << label << "  ("
            << static_cast<long>(ms + 0.5) << " ms)";
  if (!c.ok) std::cout << "  [" << c.why << "]";
  std::cout << "\n";
  if (!c.ok) ++failures;
}

std::string slurp(const std::filesystem::path& path, Criterion& c) {
  std::ifstream in(path);
  if (!in) {
    c.fail("cannot read " + path.string());
    return "";
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::shared_ptr<const lattice::ProfileShape> random_shape(std::mt19937& rng) {
  std::uniform_int_distribution<int> axis_count(1, 4), universe(1, 4);
  std::vector<lattice::ProfileAxis> axes;
  int n = axis_count(rng);
  for (int i = 0; i < n; ++i)
    axes.push_back({static_cast<AgentId>(i), 0,
                    static_cast<std::uint32_t>(universe(rng))});
  return std::make_shared<const lattice::ProfileShape>(std::move(axes));
}

std::optional<NdProfile> omeet(const std::optional<NdProfile>& a,
                               const std::optional<NdProfile>& b) {
  if (!a || !b) return std::nullopt;
  return lattice::meet(*a, *b);
}

// Cell-wise random subset that keeps every cell non-empty.
NdProfile shrink_profile(std::mt19937& rng, const NdProfile& q) {
  std::vector<StrategySet> cells = q.cells();
  std::uniform_int_distribution<StrategySet> bits;
  for (StrategySet& cell : cells) {
    StrategySet sub = cell & bits(rng);
    cell = sub ? sub : (cell & (~cell + 1u));
  }
  return NdProfile(q.shape_ptr(), std::move(cells));
}

bool included(const OutcomeSet& small, const OutcomeSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Shared by criteria 5-7: the random instances are generated once, solved
// everywhere, and the descent statistics feed the later criteria.
struct SolveStats {
  std::size_t instances = 0;
  std::size_t solves = 0;
  std::size_t collapses = 0;
  std::size_t bottoms = 0;
  std::size_t bound_breaks = 0;
} stats;

template <typename SolveFn>
void record_solve(const lattice::ProfileShape& shape, SolveFn&& solve_fn) {
  ++stats.solves;
  try {
    auto [fix, trace] = solve_fn();
    for (StrategySet cell : fix.cells())
      if (cell == 0) ++stats.bottoms;
    if (trace.rounds() > 1 + shape.total_strategies()) ++stats.bound_breaks;
  } catch (const lattice::CollapsedToBottom&) {
    ++stats.collapses;
  }
}

constexpr strategic::BRVariant kVariants[] = {
    strategic::BRVariant::FULL, strategic::BRVariant::BR1,
    strategic::BRVariant::BR2, strategic::BRVariant::BR3,
    strategic::BRVariant::BR4};

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "games";

  run(1, "5x5 grid reduces to {v1,v2}x{h1,h2} through the worked trace",
      kBudgetReductionMs, [&](Criterion& c) {
        cli::GameDocument doc = cli::parse(slurp(dir / "reduction5x5.ndg", c));
        auto [fix, trace] =
            strategic::solve(*doc.strategic_game, strategic::BRVariant::FULL);
        c.expect(fix.cells() == std::vector<StrategySet>{0b00011, 0b00011},
                 "fixpoint is not {v1,v2}x{h1,h2}");
        Removed want = {
            {{0, 3}, {0, 4}, {1, 4}},  // v4 v5 h5
            {{1, 3}},                  // h4
            {{0, 2}},                  // v3
            {{1, 2}},                  // h3
            {}};
        c.expect(trace.removed == want, "elimination order differs");
        c.expect(trace.rounds() == 5, "round count differs");
      });

  run(2, "256-game sign class aggregates to exactly 3/8 with a zero baseline",
      kBudgetClassGMs, [&](Criterion& c) {
        oracle::ClassGStats direct = oracle::class_g_mean();
        c.expect(direct.aggregate_v == oracle::Rational(3, 8),
                 "aggregate mean(v) is " + oracle::rational_str(direct.aggregate_v));
        c.expect(direct.aggregate_h == oracle::Rational(3, 8),
                 "aggregate mean(h) is " + oracle::rational_str(direct.aggregate_h));
        c.expect(direct.baseline_v == oracle::Rational(0),
                 "baseline mean(v) is " + oracle::rational_str(direct.baseline_v));
        c.expect(direct.baseline_h == oracle::Rational(0),
                 "baseline mean(h) is " + oracle::rational_str(direct.baseline_h));

        std::filesystem::path csv =
            std::filesystem::temp_directory_path() / "ndeq_acceptance_classg.csv";
        std::ostringstream out, err;
        int code = cli::cmd_classg(csv.string(), out, err);
        c.expect(code == cli::kExitOk,
                 "cmd_classg exited " + std::to_string(code));
        std::istringstream lines(out.str());
        std::string first, second;
        std::getline(lines, first);
        std::getline(lines, second);
        c.expect(first == "mean(v) = 3/8, mean(h) = 3/8",
                 "summary line: " + first);
        c.expect(second == "baseline mean(v) = 0, baseline mean(h) = 0",
                 "baseline line: " + second);

        std::ifstream written(csv);
        std::size_t count = 0;
        for (std::string line; std::getline(written, line);) ++count;
        c.expect(count == 257, "csv has " + std::to_string(count) + " lines");
        std::filesystem::remove(csv);
      });

  run(3, "three-node graph game pins the walked-through equilibrium",
      kBudgetGraphMs, [&](Criterion& c) {
        cli::GameDocument doc = cli::parse(slurp(dir / "threenode.ndmg", c));
        auto [fix, trace] = multigame::solve_multi(*doc.multi_game);
        // Axes: V@n1 V@n2 V@n3 H@n1 H@n2 H@n3.
        c.expect(fix.cells() == std::vector<StrategySet>{1, 2, 1, 3, 2, 1},
                 "fixpoint differs");
        Removed want = {
            {{5, 1}},  // h2 at the bottom node goes first
            {{0, 1}},  // then v2 at the start node
            {{4, 0}},  // then h1 at the middle node
            {{1, 0}},  // then v1 at the middle node
            {}};
        c.expect(trace.removed == want, "elimination order differs");
      });

  run(4, "cyclic 2x2 game: no pure nash, yet a verified non-bottom equilibrium",
      kBudgetNoNashMs, [&](Criterion& c) {
        std::string text = slurp(dir / "no_nash_2x2.ndg", c);
        std::ostringstream out, err;
        int code = cli::cmd_nash(text, out, err);
        c.expect(code == cli::kExitOk, "cmd_nash exited " + std::to_string(code));
        c.expect(out.str() == "none\n", "pure nash listing: " + out.str());

        cli::GameDocument doc = cli::parse(text);
        const strategic::StrategicGame& g = *doc.strategic_game;
        NdProfile fix = strategic::solve(g, strategic::BRVariant::FULL).first;
        for (StrategySet cell : fix.cells())
          c.expect(cell != 0, "empty cell in the solve result");
        c.expect(
            strategic::is_nd_equilibrium(g, fix, strategic::BRVariant::FULL),
            "solve result is not an equilibrium");
        c.expect(
            oracle::verify_engine(g, strategic::BRVariant::FULL).all_passed(),
            "oracle cross-check failed");
      });

  run(5, "engine matches the exhaustive oracle on 200 one-shot and 100 graph games",
      kBudgetOracleMs, [&](Criterion& c) {
        std::mt19937 rng(9501);
        std::size_t reports = 0;
        for (int i = 0; i < 200; ++i) {
          strategic::StrategicGame g =
              testutil::random_strategic(rng, "acc_s" + std::to_string(i));
          for (strategic::BRVariant v : kVariants) {
            oracle::EquilibriumReport report = oracle::verify_engine(g, v);
            if (!report.all_passed())
              c.fail(report.game + "/" + report.variant);
            ++reports;
          }
        }
        for (int i = 0; i < 100; ++i) {
          multigame::MultiGame mg =
              testutil::random_multi(rng, "acc_m" + std::to_string(i));
          oracle::EquilibriumReport report = oracle::verify_engine(mg);
          if (!report.all_passed()) c.fail(report.game + "/" + report.variant);
          ++reports;
        }
        c.expect(reports == 1100, "ran " + std::to_string(reports) + " reports");
      });

  run(6, "solves never collapse to bottom across 550 generated instances", 0,
      [&](Criterion& c) {
        std::mt19937 rng(9601);
        for (int i = 0; i < 400; ++i) {
          strategic::StrategicGame g =
              testutil::random_strategic(rng, "acc_e" + std::to_string(i));
          ++stats.instances;
          for (strategic::BRVariant v : kVariants)
            record_solve(*g.shape(), [&] { return strategic::solve(g, v); });
        }
        for (int i = 0; i < 150; ++i) {
          multigame::MultiGame mg =
              testutil::random_multi(rng, "acc_g" + std::to_string(i));
          ++stats.instances;
          record_solve(*mg.shape(), [&] { return multigame::solve_multi(mg); });
        }
        c.expect(stats.instances >= 500,
                 "only " + std::to_string(stats.instances) + " instances");
        c.expect(stats.collapses == 0,
                 std::to_string(stats.collapses) + " collapses");
        c.expect(stats.bottoms == 0,
                 std::to_string(stats.bottoms) + " empty cells");
      });

  run(7, "meet/leq obey the greatest-lower-bound laws and descent stays bounded",
      0, [&](Criterion& c) {
        std::mt19937 rng(9701);
        for (int round = 0; round < 1000; ++round) {
          auto shape = random_shape(rng);
          NdProfile x = testutil::random_profile(rng, shape);
          NdProfile y = testutil::random_profile(rng, shape);
          NdProfile z = testutil::random_profile(rng, shape);

          c.expect(leq(x, x), "leq not reflexive");
          std::optional<NdProfile> xy = lattice::meet(x, y);
          c.expect(xy == lattice::meet(y, x), "meet not commutative");
          c.expect(omeet(xy, z) == omeet(std::optional<NdProfile>(x),
                                         lattice::meet(y, z)),
                   "meet not associative");
          c.expect(lattice::meet(x, x) == std::optional<NdProfile>(x),
                   "meet not idempotent");
          if (xy) {
            c.expect(leq(*xy, x) && leq(*xy, y), "meet not a lower bound");
          }
          if (leq(z, x) && leq(z, y))
            c.expect(xy.has_value() && leq(z, *xy),
                     "meet not the greatest lower bound");
          if (leq(x, y) && leq(y, x)) c.expect(x == y, "leq not antisymmetric");
        }

        // Round bound collected from every solve of criterion 6.
        c.expect(stats.solves >= 2000,
                 "only " + std::to_string(stats.solves) + " solves recorded");
        c.expect(stats.bound_breaks == 0,
                 std::to_string(stats.bound_breaks) +
                     " descents exceeded 1 + total strategy count");
      });

  run(8, "order extensions: irreflexive, transitive, shrink- and inclusion-monotone",
      0, [&](Criterion& c) {
        {  // fn_less on random outcome functions
          std::mt19937 rng(9801);
          std::uniform_int_distribution<OutcomeId> pick(0, 3);
          std::vector<ContextId> all = {0, 1, 2};
          int related = 0;
          for (int round = 0; round < 1000; ++round) {
            order::Preference p = testutil::random_preference(rng, 4);
            auto fn = [&] {
              order::OutcomeFunction f;
              for (int i = 0; i < 3; ++i) f.values.push_back(pick(rng));
              return f;
            };
            order::OutcomeFunction f = fn(), g = fn(), h = fn();
            if (order::fn_less(p, f, f, all)) c.fail("fn_less not irreflexive");
            bool fg = order::fn_less(p, f, g, all);
            if (fg) ++related;
            if (fg && order::fn_less(p, g, h, all) &&
                !order::fn_less(p, f, h, all))
              c.fail("fn_less not transitive");
          }
          c.expect(related > 0, "fn_less sampler never fired");
        }
        {  // seq_less on random eventually periodic sequences
          std::mt19937 rng(9802);
          int related = 0;
          for (int round = 0; round < 1000; ++round) {
            order::Preference p = testutil::random_preference(rng, 3);
            auto s = testutil::random_seq(rng, 3);
            auto t = testutil::random_seq(rng, 3);
            auto u = testutil::random_seq(rng, 3);
            if (order::seq_less(p, s, s)) c.fail("seq_less not irreflexive");
            bool st = order::seq_less(p, s, t);
            if (st) ++related;
            if (st && order::seq_less(p, t, u) && !order::seq_less(p, s, u))
              c.fail("seq_less not transitive");
          }
          c.expect(related > 0, "seq_less sampler never fired");
        }
        {  // set_less survives shrinking both sides
          std::mt19937 rng(9803);
          int fired = 0;
          for (int round = 0; round < 1000; ++round) {
            order::Preference p = testutil::random_preference(rng, 5);
            OutcomeSet x = testutil::random_outcome_set(rng, 5);
            OutcomeSet y = testutil::random_outcome_set(rng, 5);
            if (!order::set_less(p, x, y)) continue;
            ++fired;
            auto shrink = [&](const OutcomeSet& s) {
              std::uniform_int_distribution<std::size_t> at(0, s.size() - 1);
              std::size_t keep = at(rng);
              std::vector<OutcomeId> out;
              for (std::size_t i = 0; i < s.size(); ++i)
                if (i == keep || at(rng) % 2 == 0) out.push_back(s[i]);
              return order::make_outcome_set(std::move(out));
            };
            if (!order::set_less(p, shrink(x), shrink(y)))
              c.fail("set_less lost under shrinking");
          }
          c.expect(fired > 0, "set_less sampler never fired");
        }
        {  // profile inclusion carries to induced sequences, pointwise
          std::mt19937 rng(9804);
          for (int round = 0; round < 1000; ++round) {
            multigame::MultiGame mg =
                testutil::random_multi(rng, "acc_i" + std::to_string(round));
            NdProfile big = testutil::random_profile(rng, mg.shape());
            NdProfile small = shrink_profile(rng, big);
            for (NodeId n = 0; n < mg.node_count(); ++n) {
              auto s = multigame::induced_seq(mg, small, n);
              auto t = multigame::induced_seq(mg, big, n);
              std::size_t horizon = s.length() * t.length() +
                                    std::max(s.cycle_start(), t.cycle_start());
              for (std::size_t k = 0; k <= horizon; ++k)
                if (!included(s.at(k), t.at(k))) {
                  c.fail("sequence inclusion broke at position " +
                         std::to_string(k));
                  break;
                }
            }
          }
        }
        {  // seq_less agrees with explicit unrolling to the joint period
          std::mt19937 rng(9805);
          for (int round = 0; round < 1000; ++round) {
            order::Preference p = testutil::random_preference(rng, 4);
            auto s = testutil::random_seq(rng, 4);
            auto t = testutil::random_seq(rng, 4);
            std::size_t horizon = s.length() * t.length() +
                                  std::max(s.cycle_start(), t.cycle_start());
            bool expected = true;
            for (std::size_t k = 0; k <= horizon; ++k)
              if (!order::set_less(p, s.at(k), t.at(k))) {
                expected = false;
                break;
              }
            if (order::seq_less(p, s, t) != expected)
              c.fail("seq_less disagrees with unrolling");
          }
        }
      });

  if (failures == 0) {
    std::cout << "acceptance: all 8 criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria failed\n";
  return 1;
}
