#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "ndeq/core.hpp"

namespace ndeq::lattice {

// One axis of a profile: the strategy universe of one agent at one node.
// Strategic games use a single dummy node 0 for every agent.
struct ProfileAxis {
  AgentId agent = 0;
  NodeId node = 0;
  std::uint32_t universe_size = 0;

  bool operator==(const ProfileAxis&) const = default;
};

class ProfileShape {
 public:
  explicit ProfileShape(std::vector<ProfileAxis> axes);

  const std::vector<ProfileAxis>& axes() const { return axes_; }
  std::size_t size() const { return axes_.size(); }
  const ProfileAxis& axis(std::size_t i) const { return axes_[i]; }

  // Index of the axis for (agent, node). Throws UnknownAgent / UnknownNode.
  std::size_t axis_index(AgentId agent, NodeId node) const;

  // Sum of universe sizes, which bounds the number of elimination rounds.
  std::size_t total_strategies() const;

  bool operator==(const ProfileShape&) const = default;

 private:
  std::vector<ProfileAxis> axes_;
};

// Product of non-empty strategy subsets, one per axis. The empty profile
// (bottom of the meet semi-lattice) is deliberately not representable here;
// operations that can collapse return std::optional<NdProfile> with nullopt
// standing for bottom.
class NdProfile {
 public:
  NdProfile(std::shared_ptr<const ProfileShape> shape,
            std::vector<StrategySet> cells);

  // Largest profile of the shape: every cell holds the full universe.
  static NdProfile top(std::shared_ptr<const ProfileShape> shape);

  const ProfileShape& shape() const { return *shape_; }
  const std::shared_ptr<const ProfileShape>& shape_ptr() const { return shape_; }
  const std::vector<StrategySet>& cells() const { return cells_; }
  StrategySet cell(std::size_t axis) const { return cells_[axis]; }

  // Replaces one cell; the result must stay non-empty and inside the universe.
  NdProfile with_cell(std::size_t axis, StrategySet value) const;

  // Number of pure profiles inside the product.
  std::size_t pure_count() const;

  bool operator==(const NdProfile& other) const {
    return cells_ == other.cells_ && shape() == other.shape();
  }

 private:
  std::shared_ptr<const ProfileShape> shape_;
  std::vector<StrategySet> cells_;
};

// Greatest lower bound; nullopt when some cell intersection is empty.
// Throws ShapeMismatch when the shapes differ.
std::optional<NdProfile> meet(const NdProfile& x, const NdProfile& y);

// Cell-wise inclusion. Throws ShapeMismatch when the shapes differ.
bool leq(const NdProfile& x, const NdProfile& y);

// Inclusion with bottom (nullopt) below everything.
bool leq(const std::optional<NdProfile>& x, const std::optional<NdProfile>& y);

// One descent of the elimination loop. steps holds the iterate snapshots,
// ending with the fixed point twice (the witness that iteration stopped).
// removed[i] lists the (axis, strategy) pairs dropped between steps[i] and
// steps[i+1]; the final entry is empty.
struct SolveTrace {
  std::vector<NdProfile> steps;
  std::vector<std::vector<std::pair<std::size_t, StrategyId>>> removed;

  std::size_t rounds() const { return steps.empty() ? 0 : steps.size() - 1; }
};

// Raised when an elimination step empties a cell. Carries the trace up to and
// including the collapsing step (whose snapshot is the last non-bottom iterate).
struct CollapsedToBottom : Error {
  CollapsedToBottom(std::string msg, SolveTrace partial)
      : Error(std::move(msg)), trace(std::move(partial)) {}
  SolveTrace trace;
};

namespace detail {
std::vector<std::pair<std::size_t, StrategyId>> removed_between(
    const NdProfile& from, const NdProfile& to);
[[noreturn]] void throw_collapsed(SolveTrace trace, const NdProfile& from,
                                  const std::vector<StrategySet>& shrunk);

// Step callables may return NdProfile or optional<NdProfile> (nullopt =
// bottom, for operators whose codomain includes the lattice minimum).
template <typename Step>
std::optional<NdProfile> eval_step(Step& step, const NdProfile& x) {
  using R = std::decay_t<std::invoke_result_t<Step&, const NdProfile&>>;
  if constexpr (std::is_same_v<R, std::optional<NdProfile>>)
    return step(x);
  else
    return std::optional<NdProfile>(step(x));
}
}  // namespace detail

// Iterates x <- meet(x, step(x)) from `start` until the first pre-fixed point
// (x below step(x)). Returns the fixed point of the descent together with its
// trace. Throws CollapsedToBottom when a meet empties a cell. The step
// callable receives a const NdProfile& and returns an NdProfile (or an
// optional, with nullopt for bottom) of the same shape.
template <typename Step>
std::pair<NdProfile, SolveTrace> iterate_prefixpoint(Step&& step,
                                                     const NdProfile& start) {
  SolveTrace trace;
  trace.steps.push_back(start);
  NdProfile current = start;
  for (;;) {
    std::optional<NdProfile> next = detail::eval_step(step, current);
    if (!next) {
      std::vector<StrategySet> emptied(current.cells().size(), 0);
      detail::throw_collapsed(std::move(trace), current, emptied);
    }
    if (next->shape() != current.shape())
      throw ShapeMismatch("step function changed the profile shape");
    std::vector<StrategySet> shrunk(current.cells().size());
    bool empty = false;
    for (std::size_t i = 0; i < shrunk.size(); ++i) {
      shrunk[i] = current.cell(i) & next->cell(i);
      if (shrunk[i] == 0) empty = true;
    }
    if (empty) detail::throw_collapsed(std::move(trace), current, shrunk);
    NdProfile met(current.shape_ptr(), std::move(shrunk));
    trace.removed.push_back(detail::removed_between(current, met));
    trace.steps.push_back(met);
    if (met == current) return {std::move(met), std::move(trace)};
    current = std::move(met);
  }
}

// Evaluates the meeting point condition of one operator at `x`: for every
// supplied chain c_1 included in ... included in c_n included in x (all
// non-bottom), the meet of step(c_1), ..., step(c_n) and x must stay
// non-bottom. Chains are supplied by the caller; exhaustive generation is
// only feasible for tiny shapes, larger ones get sampled chains.
// Throws ChainError when a chain is empty, not ascending, or escapes x.
template <typename Step>
bool check_meeting_point(Step&& step, const NdProfile& x,
                         const std::vector<std::vector<NdProfile>>& chains) {
  for (const auto& chain : chains) {
    if (chain.empty()) throw ChainError("meeting point chain is empty");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      if (!leq(chain[i], chain[i + 1]))
        throw ChainError("meeting point chain is not ascending");
    if (!leq(chain.back(), x))
      throw ChainError("meeting point chain escapes the base profile");
    std::optional<NdProfile> inf = x;
    for (const auto& link : chain) {
      std::optional<NdProfile> image = detail::eval_step(step, link);
      if (!image) return false;
      inf = meet(*inf, *image);
      if (!inf) return false;
    }
  }
  return true;
}

}  // namespace ndeq::lattice
