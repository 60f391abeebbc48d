#include "ndeq/order.hpp"

#include <algorithm>

namespace ndeq::order {

void Preference::check(OutcomeId x) const {
  if (x >= n_)
    throw UnknownOutcome("outcome id " + std::to_string(x) +
                         " outside preference domain of size " +
                         std::to_string(n_));
}

Preference Preference::from_pairs(
    std::size_t domain_size,
    const std::vector<std::pair<OutcomeId, OutcomeId>>& pairs) {
  Preference p;
  p.n_ = domain_size;
  p.rel_.assign(domain_size * domain_size, 0);
  for (auto [x, y] : pairs) {
    p.check(x);
    p.check(y);
    p.rel_[x * domain_size + y] = 1;
  }
  // Floyd-Warshall transitive closure.
  for (std::size_t k = 0; k < domain_size; ++k)
    for (std::size_t i = 0; i < domain_size; ++i) {
      if (!p.rel_[i * domain_size + k]) continue;
      for (std::size_t j = 0; j < domain_size; ++j)
        if (p.rel_[k * domain_size + j]) p.rel_[i * domain_size + j] = 1;
    }
  for (std::size_t i = 0; i < domain_size; ++i)
    if (p.rel_[i * domain_size + i])
      throw CycleError("preference relation has a cycle through outcome " +
                       std::to_string(i));
  return p;
}

Preference Preference::from_payoffs(const std::vector<int>& payoff) {
  Preference p;
  p.n_ = payoff.size();
  p.rel_.assign(p.n_ * p.n_, 0);
  for (std::size_t i = 0; i < p.n_; ++i)
    for (std::size_t j = 0; j < p.n_; ++j)
      if (payoff[i] < payoff[j]) p.rel_[i * p.n_ + j] = 1;
  return p;
}

bool Preference::prefers(OutcomeId worse, OutcomeId better) const {
  check(worse);
  check(better);
  return rel_[worse * n_ + better] != 0;
}

std::vector<std::pair<OutcomeId, OutcomeId>> Preference::pairs() const {
  std::vector<std::pair<OutcomeId, OutcomeId>> out;
  for (OutcomeId x = 0; x < n_; ++x)
    for (OutcomeId y = 0; y < n_; ++y)
      if (rel_[x * n_ + y]) out.emplace_back(x, y);
  return out;
}

bool fn_less(const Preference& pref, const OutcomeFunction& f,
             const OutcomeFunction& g, std::span<const ContextId> restrict) {
  if (restrict.empty())
    throw EmptyRestriction("fn_less requires a non-empty restriction set");
  bool strict = false;
  for (ContextId x : restrict) {
    if (x >= f.domain_size() || x >= g.domain_size())
      throw std::out_of_range("restriction context " + std::to_string(x) +
                              " outside function domain");
    if (!pref.prefers_eq(f(x), g(x))) return false;
    if (pref.prefers(f(x), g(x))) strict = true;
  }
  return strict;
}

std::size_t maximal_under_chain(
    const Preference& pref, const std::vector<OutcomeFunction>& candidates,
    const std::vector<std::vector<ContextId>>& chain) {
  if (candidates.empty())
    throw std::invalid_argument("maximal_under_chain: no candidates");
  if (chain.empty() || chain.front().empty())
    throw ChainError("restriction chain must start with a non-empty set");
  std::vector<std::vector<ContextId>> sorted(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    sorted[i] = chain[i];
    std::sort(sorted[i].begin(), sorted[i].end());
  }
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!std::includes(sorted[i + 1].begin(), sorted[i + 1].end(),
                       sorted[i].begin(), sorted[i].end()))
      throw ChainError("restriction chain is not inclusion-ascending at step " +
                       std::to_string(i + 1));

  auto pick_maximal = [&](const std::vector<std::size_t>& pool,
                          const std::vector<ContextId>& restrict) {
    for (std::size_t i : pool) {
      bool beaten = false;
      for (std::size_t j : pool)
        if (j != i && fn_less(pref, candidates[i], candidates[j], restrict)) {
          beaten = true;
          break;
        }
      if (!beaten) return i;
    }
    // A finite pool ordered by a strict partial order always has a maximum-
    // free element, so this point is unreachable for valid preferences.
    throw Error("maximal_under_chain: no maximal candidate found");
  };

  std::vector<std::size_t> pool(candidates.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;

  std::size_t pick = pick_maximal(pool, chain.front());
  for (std::size_t step = 1; step < chain.size(); ++step) {
    std::vector<std::size_t> agreeing;
    for (std::size_t i : pool) {
      bool same = true;
      for (ContextId x : chain[step - 1])
        if (candidates[i](x) != candidates[pick](x)) {
          same = false;
          break;
        }
      if (same) agreeing.push_back(i);
    }
    pool = std::move(agreeing);
    pick = pick_maximal(pool, chain[step]);
  }
  return pick;
}

OutcomeSet make_outcome_set(std::vector<OutcomeId> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

bool set_less(const Preference& pref, const OutcomeSet& worse,
              const OutcomeSet& better) {
  if (worse.empty() || better.empty())
    throw EmptySet("set_less requires non-empty outcome sets");
  for (OutcomeId x : worse)
    for (OutcomeId y : better)
      if (!pref.prefers(x, y)) return false;
  return true;
}

EventuallyPeriodicSeq::EventuallyPeriodicSeq(std::vector<OutcomeSet> states,
                                             std::size_t cycle_start)
    : states_(std::move(states)), cycle_start_(cycle_start) {
  if (states_.empty())
    throw std::invalid_argument("periodic sequence needs at least one state");
  if (cycle_start_ >= states_.size())
    throw std::invalid_argument("cycle_start outside representation");
  for (auto& s : states_) {
    s = make_outcome_set(std::move(s));
    if (s.empty())
      throw std::invalid_argument("periodic sequence states must be non-empty");
  }
}

const OutcomeSet& EventuallyPeriodicSeq::at(std::size_t k) const {
  if (k < states_.size()) return states_[k];
  std::size_t period = states_.size() - cycle_start_;
  return states_[cycle_start_ + (k - cycle_start_) % period];
}

EventuallyPeriodicSeq EventuallyPeriodicSeq::canonical(
    std::vector<OutcomeSet> states, std::size_t cycle_start) {
  EventuallyPeriodicSeq raw(std::move(states), cycle_start);
  std::size_t len = raw.length();
  std::size_t q = len - raw.cycle_start();

  // Minimal eventual period divides the representation period.
  std::size_t period = q;
  for (std::size_t p = 1; p < q; ++p) {
    if (q % p != 0) continue;
    bool ok = true;
    for (std::size_t k = raw.cycle_start(); ok && k < len; ++k)
      ok = raw.at(k) == raw.at(k + p);
    if (ok) {
      period = p;
      break;
    }
  }

  // Pull the cycle start as far left as the explicit prefix allows.
  std::size_t start = raw.cycle_start();
  while (start > 0 && raw.at(start - 1) == raw.at(start - 1 + period)) --start;

  std::vector<OutcomeSet> compact;
  compact.reserve(start + period);
  for (std::size_t k = 0; k < start + period; ++k) compact.push_back(raw.at(k));
  return EventuallyPeriodicSeq(std::move(compact), start);
}

bool seq_less(const Preference& pref, const EventuallyPeriodicSeq& s,
              const EventuallyPeriodicSeq& t) {
  // Position pairs evolve deterministically, so the walk closes a loop after
  // at most length(s) * length(t) steps; every position of the infinite
  // sequences is covered once the loop closes.
  std::vector<char> seen(s.length() * t.length(), 0);
  std::size_t i = 0, j = 0;
  while (!seen[i * t.length() + j]) {
    seen[i * t.length() + j] = 1;
    if (!set_less(pref, s.at(i), t.at(j))) return false;
    i = s.next(i);
    j = t.next(j);
  }
  return true;
}

}  // namespace ndeq::order
