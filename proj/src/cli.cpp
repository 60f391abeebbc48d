#include "ndeq/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ndeq::cli {

namespace {

std::string brace_set(const std::vector<std::string>& names, StrategySet set) {
  std::string s = "{";
  bool first = true;
  for (StrategyId i = 0; i < names.size(); ++i) {
    if (!set_contains(set, i)) continue;
    if (!first) s += ",";
    s += names[i];
    first = false;
  }
  return s + "}";
}

std::vector<std::string> set_names(const std::vector<std::string>& names,
                                   StrategySet set) {
  std::vector<std::string> out;
  for (StrategyId i = 0; i < names.size(); ++i)
    if (set_contains(set, i)) out.push_back(names[i]);
  return out;
}

nlohmann::json equilibrium_json(const GameDocument& doc,
                                const lattice::NdProfile& eq) {
  nlohmann::json j = nlohmann::json::object();
  if (doc.kind == GameDocument::Kind::STRATEGIC) {
    const auto& g = *doc.strategic_game;
    for (std::size_t a = 0; a < g.agent_count(); ++a)
      j[g.agent_names()[a]] = set_names(
          g.strategy_names(static_cast<AgentId>(a)), eq.cell(a));
    return j;
  }
  const auto& mg = *doc.multi_game;
  for (NodeId n = 0; n < mg.node_count(); ++n) {
    nlohmann::json node = nlohmann::json::object();
    for (std::size_t a = 0; a < mg.agent_count(); ++a)
      node[mg.agent_names()[a]] =
          set_names(mg.local_strategy_names(n, static_cast<AgentId>(a)),
                    eq.cell(mg.axis_of(static_cast<AgentId>(a), n)));
    j[mg.node_names()[n]] = std::move(node);
  }
  return j;
}

std::vector<std::vector<std::string>> trace_labels(
    const GameDocument& doc, const lattice::SolveTrace& trace) {
  AxisNaming naming = axis_naming(doc);
  std::vector<std::vector<std::string>> rounds;
  for (const auto& round : trace.removed) {
    std::vector<std::string> items;
    for (const auto& [axis, strategy] : round)
      items.push_back(naming.labels[axis] + ":" +
                      naming.strategies[axis][strategy]);
    rounds.push_back(std::move(items));
  }
  return rounds;
}

int fail_input(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << "\n";
  return kExitBadInput;
}

}  // namespace

AxisNaming axis_naming(const GameDocument& doc) {
  AxisNaming naming;
  if (doc.kind == GameDocument::Kind::STRATEGIC) {
    const auto& g = *doc.strategic_game;
    for (std::size_t a = 0; a < g.agent_count(); ++a) {
      naming.labels.push_back(g.agent_names()[a]);
      naming.strategies.push_back(g.strategy_names(static_cast<AgentId>(a)));
    }
    return naming;
  }
  const auto& mg = *doc.multi_game;
  naming.labels.resize(mg.agent_count() * mg.node_count());
  naming.strategies.resize(naming.labels.size());
  for (AgentId a = 0; a < mg.agent_count(); ++a)
    for (NodeId n = 0; n < mg.node_count(); ++n) {
      std::size_t axis = mg.axis_of(a, n);
      naming.labels[axis] = mg.agent_names()[a] + "@" + mg.node_names()[n];
      naming.strategies[axis] = mg.local_strategy_names(n, a);
    }
  return naming;
}

std::string format_equilibrium(const GameDocument& doc,
                               const lattice::NdProfile& eq) {
  if (doc.kind == GameDocument::Kind::STRATEGIC) {
    const auto& g = *doc.strategic_game;
    std::string line;
    for (std::size_t a = 0; a < g.agent_count(); ++a) {
      if (a) line += "  ";
      line += g.agent_names()[a] + ": " +
              brace_set(g.strategy_names(static_cast<AgentId>(a)), eq.cell(a));
    }
    return line;
  }
  const auto& mg = *doc.multi_game;
  std::string out;
  for (NodeId n = 0; n < mg.node_count(); ++n) {
    if (n) out += "\n";
    out += mg.node_names()[n] + ":";
    for (std::size_t a = 0; a < mg.agent_count(); ++a) {
      out += a ? "  " : " ";
      out += mg.agent_names()[a] + ": " +
             brace_set(mg.local_strategy_names(n, static_cast<AgentId>(a)),
                       eq.cell(mg.axis_of(static_cast<AgentId>(a), n)));
    }
  }
  return out;
}

std::string format_trace(const GameDocument& doc,
                         const lattice::SolveTrace& trace) {
  auto rounds = trace_labels(doc, trace);
  std::string out;
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    if (r) out += "\n";
    out += "round " + std::to_string(r + 1) + ":";
    if (rounds[r].empty()) {
      out += " fixpoint";
    } else {
      out += " removed";
      for (const std::string& item : rounds[r]) out += " " + item;
    }
  }
  return out;
}

int cmd_solve(const std::string& text, const SolveOptions& opts,
              std::ostream& out, std::ostream& err) {
  GameDocument doc;
  try {
    doc = parse(text);
  } catch (const Error& e) {
    return fail_input(err, e);
  }

  lattice::NdProfile* eq = nullptr;
  std::optional<std::pair<lattice::NdProfile, lattice::SolveTrace>> solved;
  try {
    if (doc.kind == GameDocument::Kind::STRATEGIC)
      solved = strategic::solve(*doc.strategic_game, opts.variant);
    else
      solved = multigame::solve_multi(*doc.multi_game);
  } catch (const lattice::CollapsedToBottom& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  eq = &solved->first;
  const lattice::SolveTrace& trace = solved->second;

  if (opts.json) {
    nlohmann::json j;
    j["game"] = doc.name;
    j["kind"] = doc.kind == GameDocument::Kind::STRATEGIC ? "strategic" : "multi";
    if (doc.kind == GameDocument::Kind::STRATEGIC)
      j["variant"] = strategic::variant_name(opts.variant);
    j["equilibrium"] = equilibrium_json(doc, *eq);
    j["rounds"] = trace.rounds();
    if (opts.trace) j["trace"] = trace_labels(doc, trace);
    out << j.dump(2) << "\n";
    return kExitOk;
  }

  if (opts.trace) out << format_trace(doc, trace) << "\n";
  out << format_equilibrium(doc, *eq) << "\n";
  return kExitOk;
}

int cmd_nash(const std::string& text, std::ostream& out, std::ostream& err) {
  GameDocument doc;
  try {
    doc = parse(text);
    if (doc.kind != GameDocument::Kind::STRATEGIC)
      throw KindError("nash needs a one-shot game, '" + doc.name +
                      "' is a multigame");
  } catch (const Error& e) {
    return fail_input(err, e);
  }

  const auto& g = *doc.strategic_game;
  std::size_t total = g.table().size();
  bool any = false;
  for (std::size_t idx = 0; idx < total; ++idx) {
    strategic::PureProfile profile(g.agent_count());
    std::size_t rest = idx;
    for (std::size_t a = g.agent_count(); a-- > 0;) {
      std::size_t k = g.strategy_count(static_cast<AgentId>(a));
      profile[a] = static_cast<StrategyId>(rest % k);
      rest /= k;
    }
    if (!strategic::is_pure_nash(g, profile)) continue;
    any = true;
    std::string line = "(";
    for (std::size_t a = 0; a < profile.size(); ++a) {
      if (a) line += ",";
      line += g.strategy_names(static_cast<AgentId>(a))[profile[a]];
    }
    out << line << ")\n";
  }
  if (!any) out << "none\n";
  return kExitOk;
}

int cmd_oracle(const std::string& text, strategic::BRVariant variant,
               std::size_t cap, std::ostream& out, std::ostream& err) {
  GameDocument doc;
  try {
    doc = parse(text);
  } catch (const Error& e) {
    return fail_input(err, e);
  }

  std::optional<oracle::EquilibriumReport> report;
  try {
    if (doc.kind == GameDocument::Kind::STRATEGIC)
      report = oracle::verify_engine(*doc.strategic_game, variant, cap);
    else
      report = oracle::verify_engine(*doc.multi_game, cap);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  }

  out << "game: " << report->game << "\n";
  out << "variant: " << report->variant << "\n";
  out << "equilibria: " << report->equilibria.size() << "\n";
  out << "engine result:\n";
  std::istringstream lines(format_equilibrium(doc, report->engine_result));
  for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
  for (const auto& [name, ok] : report->checks)
    out << "check " << name << ": " << (ok ? "pass" : "FAIL") << "\n";
  out << "result: " << (report->all_passed() ? "pass" : "FAIL") << "\n";
  return report->all_passed() ? kExitOk : kExitCheckFailed;
}

int cmd_classg(const std::string& csv_path, std::ostream& out,
               std::ostream& err) {
  oracle::ClassGStats stats = oracle::class_g_mean();
  out << "mean(v) = " << oracle::rational_str(stats.aggregate_v)
      << ", mean(h) = " << oracle::rational_str(stats.aggregate_h) << "\n";
  out << "baseline mean(v) = " << oracle::rational_str(stats.baseline_v)
      << ", baseline mean(h) = " << oracle::rational_str(stats.baseline_h)
      << "\n";
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::binary);
    csv << oracle::class_g_csv(stats);
    csv.flush();
    if (!csv) {
      err << "error: cannot write " << csv_path << "\n";
      return kExitIo;
    }
  }
  oracle::Rational target(3, 8);
  return (stats.aggregate_v == target && stats.aggregate_h == target)
             ? kExitOk
             : kExitCheckFailed;
}

}  // namespace ndeq::cli
