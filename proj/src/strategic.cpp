#include "ndeq/strategic.hpp"

#include <algorithm>
#include <unordered_map>

namespace ndeq::strategic {

const char* variant_name(BRVariant v) {
  switch (v) {
    case BRVariant::FULL: return "full";
    case BRVariant::BR1: return "br1";
    case BRVariant::BR2: return "br2";
    case BRVariant::BR3: return "br3";
    case BRVariant::BR4: return "br4";
  }
  return "?";
}

std::optional<BRVariant> variant_from_name(const std::string& name) {
  if (name == "full") return BRVariant::FULL;
  if (name == "br1") return BRVariant::BR1;
  if (name == "br2") return BRVariant::BR2;
  if (name == "br3") return BRVariant::BR3;
  if (name == "br4") return BRVariant::BR4;
  return std::nullopt;
}

StrategicGame::StrategicGame(std::string name,
                             std::vector<std::string> agent_names,
                             std::vector<std::vector<std::string>> strategy_names,
                             std::vector<std::string> outcome_names,
                             std::vector<order::Preference> preferences,
                             std::vector<OutcomeId> table,
                             std::vector<std::vector<int>> payoffs)
    : name_(std::move(name)),
      agent_names_(std::move(agent_names)),
      strategy_names_(std::move(strategy_names)),
      outcome_names_(std::move(outcome_names)),
      preferences_(std::move(preferences)),
      table_(std::move(table)),
      payoffs_(std::move(payoffs)) {
  if (agent_names_.empty())
    throw std::invalid_argument("game needs at least one agent");
  if (strategy_names_.size() != agent_names_.size())
    throw std::invalid_argument("strategy list count differs from agent count");
  if (preferences_.size() != agent_names_.size())
    throw std::invalid_argument("preference count differs from agent count");

  std::size_t cells = 1;
  std::vector<lattice::ProfileAxis> axes;
  for (std::size_t a = 0; a < agent_names_.size(); ++a) {
    if (strategy_names_[a].empty())
      throw std::invalid_argument("agent " + agent_names_[a] +
                                  " has no strategies");
    if (strategy_names_[a].size() > kMaxStrategies)
      throw std::invalid_argument("agent " + agent_names_[a] +
                                  " has too many strategies");
    cells *= strategy_names_[a].size();
    axes.push_back({static_cast<AgentId>(a), 0,
                    static_cast<std::uint32_t>(strategy_names_[a].size())});
  }
  if (table_.size() != cells)
    throw std::invalid_argument("outcome table has " +
                                std::to_string(table_.size()) + " entries for " +
                                std::to_string(cells) + " cells");
  for (OutcomeId oc : table_)
    if (oc >= outcome_names_.size())
      throw std::invalid_argument("table references undefined outcome " +
                                  std::to_string(oc));
  for (const auto& pref : preferences_)
    if (pref.domain_size() != outcome_names_.size())
      throw std::invalid_argument("preference domain differs from outcome set");
  if (!payoffs_.empty()) {
    if (payoffs_.size() != outcome_names_.size())
      throw std::invalid_argument("payoff row count differs from outcome set");
    for (const auto& row : payoffs_)
      if (row.size() != agent_names_.size())
        throw std::invalid_argument("payoff row width differs from agent count");
  }
  shape_ = std::make_shared<const lattice::ProfileShape>(std::move(axes));
}

StrategicGame StrategicGame::from_payoffs(
    std::string name, std::vector<std::string> agent_names,
    std::vector<std::vector<std::string>> strategy_names,
    std::vector<std::vector<int>> cell_payoffs) {
  std::size_t agents = agent_names.size();
  std::size_t cells = 1;
  for (const auto& names : strategy_names) cells *= names.size();
  if (cell_payoffs.size() != cells)
    throw std::invalid_argument("payoff count differs from cell count");

  // One fresh outcome per cell, named after the cell's strategy tuple.
  std::vector<std::string> outcome_names(cells);
  std::vector<OutcomeId> table(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    std::string label = "(";
    std::size_t rest = i;
    std::vector<std::size_t> choice(agents);
    for (std::size_t a = agents; a-- > 0;) {
      choice[a] = rest % strategy_names[a].size();
      rest /= strategy_names[a].size();
    }
    for (std::size_t a = 0; a < agents; ++a) {
      if (a) label += ",";
      label += strategy_names[a][choice[a]];
    }
    label += ")";
    outcome_names[i] = std::move(label);
    table[i] = static_cast<OutcomeId>(i);
  }

  std::vector<order::Preference> prefs;
  prefs.reserve(agents);
  for (std::size_t a = 0; a < agents; ++a) {
    std::vector<int> coord(cells);
    for (std::size_t i = 0; i < cells; ++i) {
      if (cell_payoffs[i].size() != agents)
        throw std::invalid_argument("payoff tuple width differs from agents");
      coord[i] = cell_payoffs[i][a];
    }
    prefs.push_back(order::Preference::from_payoffs(coord));
  }

  return StrategicGame(std::move(name), std::move(agent_names),
                       std::move(strategy_names), std::move(outcome_names),
                       std::move(prefs), std::move(table),
                       std::move(cell_payoffs));
}

void StrategicGame::check_agent(AgentId a) const {
  if (a >= agent_names_.size())
    throw UnknownAgent("no agent with index " + std::to_string(a));
}

std::size_t StrategicGame::context_count(AgentId a) const {
  check_agent(a);
  std::size_t m = 1;
  for (std::size_t b = 0; b < agent_names_.size(); ++b)
    if (b != a) m *= strategy_names_[b].size();
  return m;
}

std::size_t StrategicGame::profile_index(const PureProfile& profile) const {
  if (profile.size() != agent_names_.size())
    throw MalformedProfile("pure profile has " + std::to_string(profile.size()) +
                           " entries for " +
                           std::to_string(agent_names_.size()) + " agents");
  std::size_t idx = 0;
  for (std::size_t a = 0; a < profile.size(); ++a) {
    if (profile[a] >= strategy_names_[a].size())
      throw UnknownStrategy("agent " + agent_names_[a] + " has no strategy " +
                            std::to_string(profile[a]));
    idx = idx * strategy_names_[a].size() + profile[a];
  }
  return idx;
}

std::size_t StrategicGame::profile_index(AgentId a, ContextId context,
                                         StrategyId own) const {
  check_agent(a);
  // Decode the context (mixed radix over opponents, last fastest) while
  // composing the full profile index in the same pass.
  std::size_t idx = 0;
  std::size_t scale = 1;
  for (std::size_t b = 0; b < agent_names_.size(); ++b)
    if (b != a) scale *= strategy_names_[b].size();
  std::size_t rest = context;
  for (std::size_t b = 0; b < agent_names_.size(); ++b) {
    std::size_t n = strategy_names_[b].size();
    std::size_t choice;
    if (b == a) {
      choice = own;
    } else {
      scale /= n;
      choice = rest / scale;
      rest %= scale;
    }
    idx = idx * n + choice;
  }
  return idx;
}

OutcomeId outcome_of(const StrategicGame& g, const PureProfile& profile) {
  return g.table()[g.profile_index(profile)];
}

bool happy(const StrategicGame& g, AgentId a, const PureProfile& profile) {
  g.check_agent(a);
  OutcomeId here = outcome_of(g, profile);
  PureProfile deviated = profile;
  for (StrategyId s = 0; s < g.strategy_count(a); ++s) {
    deviated[a] = s;
    if (g.preference(a).prefers(here, outcome_of(g, deviated))) return false;
  }
  return true;
}

bool is_pure_nash(const StrategicGame& g, const PureProfile& profile) {
  for (AgentId a = 0; a < g.agent_count(); ++a)
    if (!happy(g, a, profile)) return false;
  return true;
}

order::OutcomeFunction strategy_as_function(const StrategicGame& g, AgentId a,
                                            StrategyId s) {
  g.check_agent(a);
  if (s >= g.strategy_count(a))
    throw UnknownStrategy("agent " + g.agent_names()[a] + " has no strategy " +
                          std::to_string(s));
  std::size_t m = g.context_count(a);
  order::OutcomeFunction f;
  f.values.resize(m);
  for (ContextId c = 0; c < m; ++c)
    f.values[c] = g.table()[g.profile_index(a, c, s)];
  return f;
}

std::vector<ContextId> flatten_contexts(const StrategicGame& g, AgentId a,
                                        const lattice::NdProfile& profile) {
  g.check_agent(a);
  if (!(profile.shape() == *g.shape()))
    throw ShapeMismatch("profile does not belong to this game");
  std::size_t m = g.context_count(a);
  std::vector<ContextId> out;
  out.reserve(m);
  for (ContextId c = 0; c < m; ++c) {
    std::size_t scale = m;
    std::size_t rest = c;
    bool inside = true;
    for (std::size_t b = 0; b < g.agent_count() && inside; ++b) {
      if (b == a) continue;
      std::size_t n = g.strategy_count(static_cast<AgentId>(b));
      scale /= n;
      StrategyId choice = static_cast<StrategyId>(rest / scale);
      rest %= scale;
      inside = set_contains(profile.cell(b), choice);
    }
    if (inside) out.push_back(c);
  }
  if (out.empty()) throw EmptyCell("opponent cells admit no context");
  return out;
}

namespace {

// Pointwise comparison of two strategies at one context.
bool beats_at(const order::Preference& pref, const order::OutcomeFunction& f,
              const order::OutcomeFunction& g, ContextId c) {
  return pref.prefers(f(c), g(c));
}

}  // namespace

StrategySet best_response(const StrategicGame& g, AgentId a,
                          const lattice::NdProfile& profile, BRVariant v) {
  g.check_agent(a);
  const order::Preference& pref = g.preference(a);
  std::size_t n = g.strategy_count(a);
  std::size_t m = g.context_count(a);

  std::vector<order::OutcomeFunction> fn(n);
  for (StrategyId s = 0; s < n; ++s) fn[s] = strategy_as_function(g, a, s);

  // Payoff games rank outcomes by value under the usual total order, so cells
  // with equal value for this agent compare as equal. Collapsing each outcome
  // to one representative per value lets the reflexive closure in fn_less see
  // those ties; the strict relation between distinct values is untouched.
  if (g.has_payoffs()) {
    std::unordered_map<int, OutcomeId> first;
    std::vector<OutcomeId> rep(g.outcome_count());
    for (OutcomeId oc = 0; oc < g.outcome_count(); ++oc)
      rep[oc] = first.try_emplace(g.payoffs()[oc][a], oc).first->second;
    for (auto& f : fn)
      for (auto& oc : f.values) oc = rep[oc];
  }

  std::vector<ContextId> everywhere(m);
  for (ContextId c = 0; c < m; ++c) everywhere[c] = c;
  std::vector<ContextId> restricted = flatten_contexts(g, a, profile);

  auto undominated_on = [&](StrategyId s, std::span<const ContextId> ctxs) {
    for (StrategyId t = 0; t < n; ++t)
      if (t != s && fn_less(pref, fn[s], fn[t], ctxs)) return false;
    return true;
  };
  auto best_reply_somewhere = [&](StrategyId s) {
    for (ContextId c : restricted) {
      bool beaten = false;
      for (StrategyId t = 0; t < n && !beaten; ++t)
        beaten = t != s && beats_at(pref, fn[s], fn[t], c);
      if (!beaten) return true;
    }
    return false;
  };
  auto never_beaten_everywhere = [&](StrategyId s) {
    for (StrategyId t = 0; t < n; ++t) {
      if (t == s) continue;
      bool all = true;
      for (ContextId c : restricted)
        if (!beats_at(pref, fn[s], fn[t], c)) {
          all = false;
          break;
        }
      if (all) return false;
    }
    return true;
  };

  StrategySet keep = 0;
  for (StrategyId s = 0; s < n; ++s) {
    bool in = false;
    switch (v) {
      case BRVariant::FULL:
        in = undominated_on(s, everywhere) && undominated_on(s, restricted) &&
             best_reply_somewhere(s);
        break;
      case BRVariant::BR1:
        in = undominated_on(s, everywhere);
        break;
      case BRVariant::BR2:
        in = undominated_on(s, restricted);
        break;
      case BRVariant::BR3:
        in = best_reply_somewhere(s);
        break;
      case BRVariant::BR4:
        in = never_beaten_everywhere(s);
        break;
    }
    if (in) keep |= StrategySet{1} << s;
  }
  return keep;
}

lattice::NdProfile combined_br(const StrategicGame& g,
                               const lattice::NdProfile& profile, BRVariant v) {
  std::vector<StrategySet> cells(g.agent_count());
  for (AgentId a = 0; a < g.agent_count(); ++a)
    cells[a] = best_response(g, a, profile, v);
  return lattice::NdProfile(g.shape(), std::move(cells));
}

bool is_nd_equilibrium(const StrategicGame& g, const lattice::NdProfile& profile,
                       BRVariant v) {
  return lattice::leq(profile, combined_br(g, profile, v));
}

bool is_strict_nd_equilibrium(const StrategicGame& g,
                              const lattice::NdProfile& profile, BRVariant v) {
  return combined_br(g, profile, v) == profile;
}

std::pair<lattice::NdProfile, lattice::SolveTrace> solve(const StrategicGame& g,
                                                         BRVariant v) {
  auto step = [&](const lattice::NdProfile& x) { return combined_br(g, x, v); };
  try {
    return lattice::iterate_prefixpoint(step, lattice::NdProfile::top(g.shape()));
  } catch (lattice::CollapsedToBottom& e) {
    throw lattice::CollapsedToBottom(
        "solve(" + g.name() + ", " + variant_name(v) + "): " + e.what(),
        std::move(e.trace));
  }
}

lattice::NdProfile cartesian_union(const lattice::NdProfile& x,
                                   const lattice::NdProfile& y) {
  if (!(x.shape() == y.shape()))
    throw ShapeMismatch("profiles have different shapes");
  std::vector<StrategySet> cells(x.cells().size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    cells[i] = x.cell(i) | y.cell(i);
  return lattice::NdProfile(x.shape_ptr(), std::move(cells));
}

}  // namespace ndeq::strategic
