#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ndeq/core.hpp"

namespace ndeq::order {

// Strict partial order over a dense outcome domain [0, domain_size).
// The relation is stored transitively closed; the reflexive closure is
// derived on demand and never stored.
class Preference {
 public:
  Preference() = default;

  // Builds the transitive closure of `pairs` and validates irreflexivity.
  // Throws CycleError when the closure would relate an outcome to itself,
  // UnknownOutcome when a pair mentions an id outside the domain.
  static Preference from_pairs(
      std::size_t domain_size,
      const std::vector<std::pair<OutcomeId, OutcomeId>>& pairs);

  // Coordinate order induced by integer payoffs: x < y iff payoff[x] < payoff[y].
  static Preference from_payoffs(const std::vector<int>& payoff);

  // Strict comparison. Throws UnknownOutcome for ids outside the domain.
  bool prefers(OutcomeId worse, OutcomeId better) const;

  // Reflexive closure of prefers().
  bool prefers_eq(OutcomeId worse, OutcomeId better) const {
    return worse == better ? (check(worse), true) : prefers(worse, better);
  }

  std::size_t domain_size() const { return n_; }

  // All related pairs, lexicographically ordered.
  std::vector<std::pair<OutcomeId, OutcomeId>> pairs() const;

 private:
  void check(OutcomeId x) const;

  std::size_t n_ = 0;
  std::vector<char> rel_;  // n_*n_ matrix, rel_[x*n_+y] != 0 iff x < y
};

// Total function from a dense context domain [0, values.size()) to outcomes.
struct OutcomeFunction {
  std::vector<OutcomeId> values;

  std::size_t domain_size() const { return values.size(); }
  OutcomeId operator()(ContextId x) const { return values[x]; }
  bool operator==(const OutcomeFunction&) const = default;
};

// f < g on `restrict`: f(x) <= g(x) everywhere on restrict and f(x) < g(x)
// somewhere on restrict. Throws EmptyRestriction when restrict is empty and
// UnknownOutcome when a context lies outside either domain.
bool fn_less(const Preference& pref, const OutcomeFunction& f,
             const OutcomeFunction& g, std::span<const ContextId> restrict);

// Picks a candidate that is fn_less-maximal for every restriction set of an
// inclusion-ascending chain at once. Works inward: maximal for chain[0], then
// repeatedly refined among candidates that agree with the current pick on the
// previous restriction set. Ties resolve to the lowest candidate index, so
// callers get a deterministic result by ordering candidates by identifier.
// Returns the index into `candidates`.
std::size_t maximal_under_chain(const Preference& pref,
                                const std::vector<OutcomeFunction>& candidates,
                                const std::vector<std::vector<ContextId>>& chain);

// X < Y as sets: every pair drawn from X x Y is strictly related.
// Throws EmptySet when either side is empty.
bool set_less(const Preference& pref, const OutcomeSet& worse,
              const OutcomeSet& better);

// Normalizes an arbitrary vector into an OutcomeSet (sorted, unique).
OutcomeSet make_outcome_set(std::vector<OutcomeId> xs);

// Infinite sequence of outcome sets with a finite representation: positions
// 0..states.size()-1 are explicit, later positions repeat the suffix starting
// at cycle_start.
class EventuallyPeriodicSeq {
 public:
  // Validates: states non-empty, every set non-empty, cycle_start in range.
  // Each set is normalized to sorted unique form.
  EventuallyPeriodicSeq(std::vector<OutcomeSet> states, std::size_t cycle_start);

  // Same data, but reduced to the minimal period and minimal cycle_start, so
  // equal sequences get equal representations.
  static EventuallyPeriodicSeq canonical(std::vector<OutcomeSet> states,
                                         std::size_t cycle_start);

  const OutcomeSet& at(std::size_t k) const;
  std::size_t length() const { return states_.size(); }
  std::size_t cycle_start() const { return cycle_start_; }
  std::size_t period() const { return states_.size() - cycle_start_; }

  // Representation index of the position after `pos`.
  std::size_t next(std::size_t pos) const {
    return pos + 1 < states_.size() ? pos + 1 : cycle_start_;
  }

  const std::vector<OutcomeSet>& states() const { return states_; }
  bool operator==(const EventuallyPeriodicSeq&) const = default;

 private:
  std::vector<OutcomeSet> states_;
  std::size_t cycle_start_;
};

// s < t pointwise: at every position k, at(k) of s is set_less than at(k) of
// t. Decided finitely by walking representation index pairs until one repeats.
bool seq_less(const Preference& pref, const EventuallyPeriodicSeq& s,
              const EventuallyPeriodicSeq& t);

}  // namespace ndeq::order
