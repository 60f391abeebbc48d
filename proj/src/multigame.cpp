#include "ndeq/multigame.hpp"

#include <algorithm>

namespace ndeq::multigame {

MultiGame::MultiGame(std::string name, std::vector<std::string> agent_names,
                     std::vector<std::string> node_names,
                     std::vector<std::vector<std::vector<std::string>>> strategy_names,
                     std::vector<std::string> outcome_names,
                     std::vector<order::Preference> preferences,
                     std::vector<std::vector<std::pair<OutcomeId, NodeId>>> table,
                     std::vector<std::vector<int>> payoffs, NodeId start)
    : name_(std::move(name)),
      agent_names_(std::move(agent_names)),
      node_names_(std::move(node_names)),
      strategy_names_(std::move(strategy_names)),
      outcome_names_(std::move(outcome_names)),
      preferences_(std::move(preferences)),
      table_(std::move(table)),
      payoffs_(std::move(payoffs)),
      start_(start) {
  if (agent_names_.empty())
    throw std::invalid_argument("multigame needs at least one agent");
  if (node_names_.empty())
    throw std::invalid_argument("multigame needs at least one node");
  if (node_names_.size() > 32)
    throw std::invalid_argument("multigame supports at most 32 nodes");
  if (start_ >= node_names_.size())
    throw std::invalid_argument("start node outside the node set");
  if (strategy_names_.size() != node_names_.size() ||
      table_.size() != node_names_.size())
    throw std::invalid_argument("per-node data differs from node count");
  if (preferences_.size() != agent_names_.size())
    throw std::invalid_argument("preference count differs from agent count");

  std::vector<lattice::ProfileAxis> axes;
  for (std::size_t a = 0; a < agent_names_.size(); ++a)
    for (std::size_t n = 0; n < node_names_.size(); ++n) {
      if (strategy_names_[n].size() != agent_names_.size())
        throw std::invalid_argument("node " + node_names_[n] +
                                    " lacks strategy sets for some agents");
      const auto& names = strategy_names_[n][a];
      if (names.empty())
        throw std::invalid_argument("agent " + agent_names_[a] +
                                    " has no strategies at node " +
                                    node_names_[n]);
      if (names.size() > kMaxStrategies)
        throw std::invalid_argument("too many strategies at node " +
                                    node_names_[n]);
      axes.push_back({static_cast<AgentId>(a), static_cast<NodeId>(n),
                      static_cast<std::uint32_t>(names.size())});
    }

  for (std::size_t n = 0; n < node_names_.size(); ++n) {
    if (table_[n].size() != local_profile_count(static_cast<NodeId>(n)))
      throw std::invalid_argument("node " + node_names_[n] +
                                  " transition table is not total");
    for (const auto& [oc, succ] : table_[n]) {
      if (oc >= outcome_names_.size())
        throw std::invalid_argument("transition references undefined outcome");
      if (succ >= node_names_.size())
        throw std::invalid_argument("transition leaves the node set");
    }
  }
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

MultiGame MultiGame::from_payoffs(
    std::string name, std::vector<std::string> agent_names,
    std::vector<std::string> node_names,
    std::vector<std::vector<std::vector<std::string>>> strategy_names,
    std::vector<std::vector<std::pair<std::vector<int>, NodeId>>> cells,
    NodeId start) {
  std::size_t agents = agent_names.size();
  if (cells.size() != node_names.size())
    throw std::invalid_argument("per-node cell data differs from node count");

  std::vector<std::string> outcome_names;
  std::vector<std::vector<int>> payoffs;
  std::vector<std::vector<std::pair<OutcomeId, NodeId>>> table(cells.size());
  for (std::size_t n = 0; n < cells.size(); ++n) {
    table[n].reserve(cells[n].size());
    for (std::size_t i = 0; i < cells[n].size(); ++i) {
      auto& [tuple, succ] = cells[n][i];
      if (tuple.size() != agents)
        throw std::invalid_argument("payoff tuple width differs from agents");
      // Mint one outcome per cell, named by node and strategy tuple.
      std::string label = "(" + node_names[n] + ":";
      std::size_t rest = i;
      std::vector<std::size_t> choice(agents);
      for (std::size_t a = agents; a-- > 0;) {
        std::size_t k = strategy_names[n][a].size();
        choice[a] = rest % k;
        rest /= k;
      }
      for (std::size_t a = 0; a < agents; ++a) {
        if (a) label += ",";
        label += strategy_names[n][a][choice[a]];
      }
      label += ")";
      table[n].emplace_back(static_cast<OutcomeId>(outcome_names.size()), succ);
      outcome_names.push_back(std::move(label));
      payoffs.push_back(tuple);
    }
  }

  std::vector<order::Preference> prefs;
  prefs.reserve(agents);
  for (std::size_t a = 0; a < agents; ++a) {
    std::vector<int> coord(payoffs.size());
    for (std::size_t i = 0; i < payoffs.size(); ++i) coord[i] = payoffs[i][a];
    prefs.push_back(order::Preference::from_payoffs(coord));
  }

  return MultiGame(std::move(name), std::move(agent_names),
                   std::move(node_names), std::move(strategy_names),
                   std::move(outcome_names), std::move(prefs), std::move(table),
                   std::move(payoffs), start);
}

void MultiGame::check_node(NodeId n) const {
  if (n >= node_names_.size())
    throw UnknownNode("no node with index " + std::to_string(n));
}

void MultiGame::check_agent(AgentId a) const {
  if (a >= agent_names_.size())
    throw UnknownAgent("no agent with index " + std::to_string(a));
}

std::size_t MultiGame::local_profile_count(NodeId n) const {
  check_node(n);
  std::size_t count = 1;
  for (std::size_t a = 0; a < agent_names_.size(); ++a)
    count *= strategy_names_[n][a].size();
  return count;
}

std::size_t MultiGame::local_profile_index(
    NodeId n, const std::vector<StrategyId>& local) const {
  check_node(n);
  if (local.size() != agent_names_.size())
    throw MalformedProfile("local profile width differs from agent count");
  std::size_t idx = 0;
  for (std::size_t a = 0; a < local.size(); ++a) {
    std::size_t k = strategy_names_[n][a].size();
    if (local[a] >= k)
      throw UnknownStrategy("agent " + agent_names_[a] + " has no strategy " +
                            std::to_string(local[a]) + " at node " +
                            node_names_[n]);
    idx = idx * k + local[a];
  }
  return idx;
}

namespace {

using NodeMask = std::uint32_t;

struct NodeImage {
  OutcomeSet outcomes;
  NodeMask successors = 0;
};

// Outcome and successor images of every node under the profile's local cells.
std::vector<NodeImage> node_images(const MultiGame& mg,
                                   const lattice::NdProfile& sigma) {
  std::vector<NodeImage> images(mg.node_count());
  std::vector<StrategyId> local(mg.agent_count());
  for (NodeId n = 0; n < mg.node_count(); ++n) {
    NodeImage& img = images[n];
    std::vector<OutcomeId> outcomes;
    // Walk the cell product at node n in flattened order.
    for (std::size_t a = 0; a < mg.agent_count(); ++a) {
      StrategySet cell = sigma.cell(mg.axis_of(static_cast<AgentId>(a), n));
      local[a] = static_cast<StrategyId>(__builtin_ctz(cell));
    }
    for (;;) {
      const auto& [oc, succ] = mg.transition(n, mg.local_profile_index(n, local));
      outcomes.push_back(oc);
      img.successors |= NodeMask{1} << succ;
      // Advance to the next member of the product, last agent fastest.
      std::size_t a = mg.agent_count();
      while (a-- > 0) {
        StrategySet cell = sigma.cell(mg.axis_of(static_cast<AgentId>(a), n));
        StrategySet higher = cell & ~((StrategySet{2} << local[a]) - 1);
        if (higher) {
          local[a] = static_cast<StrategyId>(__builtin_ctz(higher));
          break;
        }
        local[a] = static_cast<StrategyId>(__builtin_ctz(cell));
      }
      if (a == static_cast<std::size_t>(-1)) break;
    }
    img.outcomes = order::make_outcome_set(std::move(outcomes));
  }
  return images;
}

order::EventuallyPeriodicSeq seq_from_images(const std::vector<NodeImage>& images,
                                             NodeId start) {
  std::vector<NodeMask> visited;
  std::vector<OutcomeSet> states;
  NodeMask current = NodeMask{1} << start;
  for (;;) {
    for (std::size_t k = 0; k < visited.size(); ++k)
      if (visited[k] == current)
        return order::EventuallyPeriodicSeq::canonical(std::move(states), k);
    visited.push_back(current);
    std::vector<OutcomeId> outcomes;
    NodeMask next = 0;
    for (std::size_t n = 0; n < images.size(); ++n) {
      if (!((current >> n) & 1u)) continue;
      outcomes.insert(outcomes.end(), images[n].outcomes.begin(),
                      images[n].outcomes.end());
      next |= images[n].successors;
    }
    states.push_back(order::make_outcome_set(std::move(outcomes)));
    current = next;
  }
}

void require_shape(const MultiGame& mg, const lattice::NdProfile& sigma) {
  if (!(sigma.shape() == *mg.shape()))
    throw ShapeMismatch("profile does not belong to this multigame");
}

}  // namespace

std::pair<OutcomeSet, std::vector<NodeId>> local_step(
    const MultiGame& mg, NodeId n, std::span<const StrategySet> local) {
  mg.check_node(n);
  if (local.size() != mg.agent_count())
    throw MalformedProfile("local cell count differs from agent count");
  for (std::size_t a = 0; a < local.size(); ++a) {
    if (local[a] == 0)
      throw EmptyCell("agent " + mg.agent_names()[a] + " has an empty cell at " +
                      mg.node_names()[n]);
    if (local[a] &
        ~full_strategy_set(mg.local_strategy_count(n, static_cast<AgentId>(a))))
      throw UnknownStrategy("cell leaves the local universe at node " +
                            mg.node_names()[n]);
  }

  std::vector<OutcomeId> outcomes;
  std::vector<NodeId> successors;
  std::vector<StrategyId> choice(mg.agent_count());
  std::vector<std::vector<StrategyId>> members(mg.agent_count());
  for (std::size_t a = 0; a < local.size(); ++a)
    members[a] = set_elements(local[a]);
  std::vector<std::size_t> pos(mg.agent_count(), 0);
  for (;;) {
    for (std::size_t a = 0; a < mg.agent_count(); ++a)
      choice[a] = members[a][pos[a]];
    const auto& [oc, succ] = mg.transition(n, mg.local_profile_index(n, choice));
    outcomes.push_back(oc);
    successors.push_back(succ);
    std::size_t a = mg.agent_count();
    while (a-- > 0) {
      if (++pos[a] < members[a].size()) break;
      pos[a] = 0;
    }
    if (a == static_cast<std::size_t>(-1)) break;
  }
  std::sort(successors.begin(), successors.end());
  successors.erase(std::unique(successors.begin(), successors.end()),
                   successors.end());
  return {order::make_outcome_set(std::move(outcomes)), std::move(successors)};
}

order::EventuallyPeriodicSeq induced_seq(const MultiGame& mg,
                                         const lattice::NdProfile& sigma,
                                         NodeId n) {
  mg.check_node(n);
  require_shape(mg, sigma);
  return seq_from_images(node_images(mg, sigma), n);
}

std::vector<StrategySet> agent_best_response(const MultiGame& mg, AgentId a,
                                             const lattice::NdProfile& sigma) {
  mg.check_agent(a);
  require_shape(mg, sigma);
  const order::Preference& pref = mg.preference(a);
  std::size_t nodes = mg.node_count();

  // Enumerate a's full pure strategies: one local choice per node, over the
  // full local universes (deviations are unrestricted).
  std::vector<std::vector<StrategyId>> full;
  std::vector<StrategyId> choice(nodes, 0);
  for (;;) {
    full.push_back(choice);
    std::size_t n = nodes;
    while (n-- > 0) {
      if (++choice[n] < mg.local_strategy_count(static_cast<NodeId>(n), a)) break;
      choice[n] = 0;
    }
    if (n == static_cast<std::size_t>(-1)) break;
  }

  // seqs[i][n]: sequence induced from node n when a plays full[i] and the
  // opponents keep to sigma.
  std::vector<std::vector<order::EventuallyPeriodicSeq>> seqs;
  seqs.reserve(full.size());
  for (const auto& strategy : full) {
    lattice::NdProfile overridden = sigma;
    for (NodeId n = 0; n < nodes; ++n)
      overridden = overridden.with_cell(mg.axis_of(a, n),
                                        StrategySet{1} << strategy[n]);
    auto images = node_images(mg, overridden);
    std::vector<order::EventuallyPeriodicSeq> per_node;
    per_node.reserve(nodes);
    for (NodeId n = 0; n < nodes; ++n)
      per_node.push_back(seq_from_images(images, n));
    seqs.push_back(std::move(per_node));
  }

  std::vector<StrategySet> result(nodes, 0);
  for (NodeId n = 0; n < nodes; ++n)
    for (std::size_t i = 0; i < full.size(); ++i) {
      bool beaten = false;
      for (std::size_t j = 0; j < full.size() && !beaten; ++j)
        beaten = j != i && order::seq_less(pref, seqs[i][n], seqs[j][n]);
      if (!beaten) result[n] |= StrategySet{1} << full[i][n];
    }
  return result;
}

StrategySet node_best_response(const MultiGame& mg, AgentId a,
                               const lattice::NdProfile& sigma, NodeId n) {
  mg.check_node(n);
  return agent_best_response(mg, a, sigma)[n];
}

lattice::NdProfile combined_br_multi(const MultiGame& mg,
                                     const lattice::NdProfile& sigma) {
  require_shape(mg, sigma);
  std::vector<StrategySet> cells(mg.shape()->size());
  for (AgentId a = 0; a < mg.agent_count(); ++a) {
    std::vector<StrategySet> per_node = agent_best_response(mg, a, sigma);
    for (NodeId n = 0; n < mg.node_count(); ++n)
      cells[mg.axis_of(a, n)] = per_node[n];
  }
  return lattice::NdProfile(mg.shape(), std::move(cells));
}

std::pair<lattice::NdProfile, lattice::SolveTrace> solve_multi(
    const MultiGame& mg) {
  auto step = [&](const lattice::NdProfile& x) {
    return combined_br_multi(mg, x);
  };
  try {
    return lattice::iterate_prefixpoint(step,
                                        lattice::NdProfile::top(mg.shape()));
  } catch (lattice::CollapsedToBottom& e) {
    throw lattice::CollapsedToBottom(
        "solve_multi(" + mg.name() + "): " + e.what(), std::move(e.trace));
  }
}

bool is_nd_equilibrium_multi(const MultiGame& mg,
                             const lattice::NdProfile& sigma) {
  return lattice::leq(sigma, combined_br_multi(mg, sigma));
}

MultiGame embed_strategic(const strategic::StrategicGame& g) {
  std::vector<std::vector<std::vector<std::string>>> strategy_names(1);
  for (AgentId a = 0; a < g.agent_count(); ++a)
    strategy_names[0].push_back(g.strategy_names(a));

  std::vector<std::vector<std::pair<OutcomeId, NodeId>>> table(1);
  table[0].reserve(g.table().size());
  for (OutcomeId oc : g.table()) table[0].emplace_back(oc, 0);

  std::vector<order::Preference> prefs;
  for (AgentId a = 0; a < g.agent_count(); ++a) prefs.push_back(g.preference(a));

  return MultiGame(g.name(), g.agent_names(), {"n0"}, std::move(strategy_names),
                   g.outcome_names(), std::move(prefs), std::move(table),
                   g.payoffs());
}

}  // namespace ndeq::multigame
