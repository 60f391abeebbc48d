#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ndeq/core.hpp"
#include "ndeq/lattice.hpp"
#include "ndeq/order.hpp"

namespace ndeq::strategic {

enum class BRVariant { FULL, BR1, BR2, BR3, BR4 };

const char* variant_name(BRVariant v);
std::optional<BRVariant> variant_from_name(const std::string& name);

// One strategy choice per agent, in agent order.
using PureProfile = std::vector<StrategyId>;

// Finite one-shot game: every agent picks one strategy, the combined choice
// selects an outcome, and each agent ranks outcomes by a strict partial order.
class StrategicGame {
 public:
  // `table` maps flattened pure profiles (agent 0 most significant, last
  // agent fastest) to outcomes. `payoffs`, when present, gives the integer
  // payoff vector (one entry per agent) that induced each preference;
  // purely informational, used by reports.
  StrategicGame(std::string name, std::vector<std::string> agent_names,
                std::vector<std::vector<std::string>> strategy_names,
                std::vector<std::string> outcome_names,
                std::vector<order::Preference> preferences,
                std::vector<OutcomeId> table,
                std::vector<std::vector<int>> payoffs = {});

  // Convenience constructor for payoff games: outcomes are minted one per
  // cell and each agent prefers higher own payoff.
  static StrategicGame from_payoffs(
      std::string name, std::vector<std::string> agent_names,
      std::vector<std::vector<std::string>> strategy_names,
      std::vector<std::vector<int>> cell_payoffs);

  const std::string& name() const { return name_; }
  std::size_t agent_count() const { return agent_names_.size(); }
  const std::vector<std::string>& agent_names() const { return agent_names_; }
  const std::vector<std::string>& strategy_names(AgentId a) const {
    return strategy_names_[a];
  }
  std::uint32_t strategy_count(AgentId a) const {
    return static_cast<std::uint32_t>(strategy_names_[a].size());
  }
  std::size_t outcome_count() const { return outcome_names_.size(); }
  const std::vector<std::string>& outcome_names() const {
    return outcome_names_;
  }
  const order::Preference& preference(AgentId a) const {
    return preferences_.at(a);
  }
  const std::vector<OutcomeId>& table() const { return table_; }
  const std::vector<std::vector<int>>& payoffs() const { return payoffs_; }
  bool has_payoffs() const { return !payoffs_.empty(); }

  const std::shared_ptr<const lattice::ProfileShape>& shape() const {
    return shape_;
  }

  // Number of opponent contexts of agent a (the flattened size of the
  // opponents' joint strategy space; 1 when a plays alone).
  std::size_t context_count(AgentId a) const;

  // Flattened index of a pure profile.
  std::size_t profile_index(const PureProfile& profile) const;

  // Flattened pure profile of (context, own strategy) for agent a. Contexts
  // enumerate the opponents' joint choices in agent order, last opponent
  // fastest.
  std::size_t profile_index(AgentId a, ContextId context, StrategyId own) const;

  void check_agent(AgentId a) const;

 private:
  std::string name_;
  std::vector<std::string> agent_names_;
  std::vector<std::vector<std::string>> strategy_names_;
  std::vector<std::string> outcome_names_;
  std::vector<order::Preference> preferences_;
  std::vector<OutcomeId> table_;
  std::vector<std::vector<int>> payoffs_;
  std::shared_ptr<const lattice::ProfileShape> shape_;
};

// Outcome selected by a pure profile. Throws MalformedProfile /
// UnknownStrategy on arity or range errors.
OutcomeId outcome_of(const StrategicGame& g, const PureProfile& profile);

// True when agent a has no unilateral deviation from `profile` it prefers.
bool happy(const StrategicGame& g, AgentId a, const PureProfile& profile);

// True when every agent is happy.
bool is_pure_nash(const StrategicGame& g, const PureProfile& profile);

// Agent a's strategy s as a function from opponent contexts to outcomes.
order::OutcomeFunction strategy_as_function(const StrategicGame& g, AgentId a,
                                            StrategyId s);

// Opponent contexts of agent a compatible with the opponents' cells of
// `profile` (agent a's own cell is ignored), in ascending order.
std::vector<ContextId> flatten_contexts(const StrategicGame& g, AgentId a,
                                        const lattice::NdProfile& profile);

// Best responding strategies of agent a against the opponents' cells of
// `profile`. Throws EmptyCell when an opponent cell is empty (unrepresentable
// for NdProfile, kept for the contract), UnknownAgent for bad ids.
//
// FULL keeps s iff (1) no strategy beats s pointwise on all opponent
// contexts, (2) no strategy beats s pointwise on the restricted contexts,
// and (3) s is a best reply to some single restricted context. BR1..BR4 are
// the single-condition variants: BR1 = (1), BR2 = (2), BR3 = (3), and BR4
// keeps s iff no strategy beats it at every single restricted context taken
// one at a time.
StrategySet best_response(const StrategicGame& g, AgentId a,
                          const lattice::NdProfile& profile, BRVariant v);

// Applies best_response for every agent at once (one elimination round).
lattice::NdProfile combined_br(const StrategicGame& g,
                               const lattice::NdProfile& profile, BRVariant v);

// Profile where every agent's cell consists of best responses only.
bool is_nd_equilibrium(const StrategicGame& g, const lattice::NdProfile& profile,
                       BRVariant v);

// Profile where every cell equals the full best response set.
bool is_strict_nd_equilibrium(const StrategicGame& g,
                              const lattice::NdProfile& profile, BRVariant v);

// Iterated simultaneous elimination from the full profile.
std::pair<lattice::NdProfile, lattice::SolveTrace> solve(const StrategicGame& g,
                                                         BRVariant v);

// Cell-wise union (the join induced by the product structure).
lattice::NdProfile cartesian_union(const lattice::NdProfile& x,
                                   const lattice::NdProfile& y);

}  // namespace ndeq::strategic
