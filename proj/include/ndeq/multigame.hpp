#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ndeq/core.hpp"
#include "ndeq/lattice.hpp"
#include "ndeq/order.hpp"
#include "ndeq/strategic.hpp"

namespace ndeq::multigame {

// Game played on a graph of nodes. Each node carries its own one-shot table;
// a combined local choice yields an outcome and a successor node. Agents rank
// infinite outcome-set sequences, not single outcomes.
class MultiGame {
 public:
  // `table[n]` maps flattened local pure profiles at node n (agent 0 most
  // significant, last agent fastest) to (outcome, successor).
  MultiGame(std::string name, std::vector<std::string> agent_names,
            std::vector<std::string> node_names,
            std::vector<std::vector<std::vector<std::string>>> strategy_names,
            std::vector<std::string> outcome_names,
            std::vector<order::Preference> preferences,
            std::vector<std::vector<std::pair<OutcomeId, NodeId>>> table,
            std::vector<std::vector<int>> payoffs = {}, NodeId start = 0);

  // Payoff flavour: outcomes are minted one per (node, cell) and each agent
  // prefers higher own payoff.
  static MultiGame from_payoffs(
      std::string name, std::vector<std::string> agent_names,
      std::vector<std::string> node_names,
      std::vector<std::vector<std::vector<std::string>>> strategy_names,
      std::vector<std::vector<std::pair<std::vector<int>, NodeId>>> cells,
      NodeId start = 0);

  const std::string& name() const { return name_; }
  std::size_t agent_count() const { return agent_names_.size(); }
  std::size_t node_count() const { return node_names_.size(); }
  const std::vector<std::string>& agent_names() const { return agent_names_; }
  const std::vector<std::string>& node_names() const { return node_names_; }
  NodeId start_node() const { return start_; }

  const std::vector<std::string>& local_strategy_names(NodeId n,
                                                       AgentId a) const {
    return strategy_names_[n][a];
  }
  std::uint32_t local_strategy_count(NodeId n, AgentId a) const {
    return static_cast<std::uint32_t>(strategy_names_[n][a].size());
  }

  std::size_t outcome_count() const { return outcome_names_.size(); }
  const std::vector<std::string>& outcome_names() const {
    return outcome_names_;
  }
  const order::Preference& preference(AgentId a) const {
    return preferences_.at(a);
  }
  const std::vector<std::vector<int>>& payoffs() const { return payoffs_; }
  bool has_payoffs() const { return !payoffs_.empty(); }

  std::size_t local_profile_count(NodeId n) const;
  std::size_t local_profile_index(NodeId n,
                                  const std::vector<StrategyId>& local) const;
  const std::pair<OutcomeId, NodeId>& transition(NodeId n, std::size_t i) const {
    return table_[n][i];
  }

  // Profiles put one axis per (agent, node), agent-major; a one-node game has
  // the same axis order as the strategic shape.
  const std::shared_ptr<const lattice::ProfileShape>& shape() const {
    return shape_;
  }
  std::size_t axis_of(AgentId a, NodeId n) const {
    return static_cast<std::size_t>(a) * node_names_.size() + n;
  }

  void check_node(NodeId n) const;
  void check_agent(AgentId a) const;

 private:
  std::string name_;
  std::vector<std::string> agent_names_;
  std::vector<std::string> node_names_;
  std::vector<std::vector<std::vector<std::string>>> strategy_names_;
  std::vector<std::string> outcome_names_;
  std::vector<order::Preference> preferences_;
  std::vector<std::vector<std::pair<OutcomeId, NodeId>>> table_;
  std::vector<std::vector<int>> payoffs_;
  NodeId start_ = 0;
  std::shared_ptr<const lattice::ProfileShape> shape_;
};

// Image of the flattened local profile product at node n: the outcomes that
// can happen there and the successors that can follow. `local` holds one
// strategy subset per agent. Throws UnknownNode / EmptyCell.
std::pair<OutcomeSet, std::vector<NodeId>> local_step(
    const MultiGame& mg, NodeId n, std::span<const StrategySet> local);

// Sequence of position-wise possible outcome sets when play starts at n and
// every agent keeps to sigma: position k unions the outcomes of all nodes
// reachable in k steps. Canonical representation.
order::EventuallyPeriodicSeq induced_seq(const MultiGame& mg,
                                         const lattice::NdProfile& sigma,
                                         NodeId n);

// Best local choices of agent a at every node against the opponents' cells
// of sigma (a's own cells are ignored): enumerate a's full pure strategies
// (one local choice per node), keep those whose induced sequence from n is
// maximal, and project to n. Returned vector is indexed by node.
std::vector<StrategySet> agent_best_response(const MultiGame& mg, AgentId a,
                                             const lattice::NdProfile& sigma);

// Single-node view of agent_best_response.
StrategySet node_best_response(const MultiGame& mg, AgentId a,
                               const lattice::NdProfile& sigma, NodeId n);

// One simultaneous elimination round over all (agent, node) cells.
lattice::NdProfile combined_br_multi(const MultiGame& mg,
                                     const lattice::NdProfile& sigma);

// Iterated elimination from the full profile.
std::pair<lattice::NdProfile, lattice::SolveTrace> solve_multi(
    const MultiGame& mg);

// sigma cell-wise inside combined_br_multi(mg, sigma).
bool is_nd_equilibrium_multi(const MultiGame& mg,
                             const lattice::NdProfile& sigma);

// One self-looping node holding the whole one-shot table.
MultiGame embed_strategic(const strategic::StrategicGame& g);

}  // namespace ndeq::multigame
