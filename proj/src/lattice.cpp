#include "ndeq/lattice.hpp"

#include <algorithm>

namespace ndeq::lattice {

ProfileShape::ProfileShape(std::vector<ProfileAxis> axes)
    : axes_(std::move(axes)) {
  if (axes_.empty())
    throw std::invalid_argument("profile shape needs at least one axis");
  for (const auto& a : axes_) {
    if (a.universe_size == 0)
      throw std::invalid_argument("axis universe must be non-empty");
    if (a.universe_size > kMaxStrategies)
      throw std::invalid_argument("axis universe exceeds " +
                                  std::to_string(kMaxStrategies) +
                                  " strategies");
  }
  for (std::size_t i = 0; i < axes_.size(); ++i)
    for (std::size_t j = i + 1; j < axes_.size(); ++j)
      if (axes_[i].agent == axes_[j].agent && axes_[i].node == axes_[j].node)
        throw std::invalid_argument("duplicate (agent, node) axis");
}

std::size_t ProfileShape::axis_index(AgentId agent, NodeId node) const {
  bool agent_seen = false;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].agent == agent) {
      agent_seen = true;
      if (axes_[i].node == node) return i;
    }
  }
  if (!agent_seen)
    throw UnknownAgent("no axis for agent " + std::to_string(agent));
  throw UnknownNode("agent " + std::to_string(agent) + " has no axis at node " +
                    std::to_string(node));
}

std::size_t ProfileShape::total_strategies() const {
  std::size_t total = 0;
  for (const auto& a : axes_) total += a.universe_size;
  return total;
}

NdProfile::NdProfile(std::shared_ptr<const ProfileShape> shape,
                     std::vector<StrategySet> cells)
    : shape_(std::move(shape)), cells_(std::move(cells)) {
  if (!shape_) throw std::invalid_argument("profile without a shape");
  if (cells_.size() != shape_->size())
    throw MalformedProfile("profile has " + std::to_string(cells_.size()) +
                           " cells for " + std::to_string(shape_->size()) +
                           " axes");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] == 0)
      throw MalformedProfile("cell " + std::to_string(i) + " is empty");
    if (cells_[i] & ~full_strategy_set(shape_->axis(i).universe_size))
      throw MalformedProfile("cell " + std::to_string(i) +
                             " leaves its universe");
  }
}

NdProfile NdProfile::top(std::shared_ptr<const ProfileShape> shape) {
  if (!shape) throw std::invalid_argument("profile without a shape");
  std::vector<StrategySet> cells(shape->size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    cells[i] = full_strategy_set(shape->axis(i).universe_size);
  return NdProfile(std::move(shape), std::move(cells));
}

NdProfile NdProfile::with_cell(std::size_t axis, StrategySet value) const {
  std::vector<StrategySet> cells = cells_;
  cells.at(axis) = value;
  return NdProfile(shape_, std::move(cells));
}

std::size_t NdProfile::pure_count() const {
  std::size_t n = 1;
  for (StrategySet c : cells_) n *= set_size(c);
  return n;
}

static void require_same_shape(const NdProfile& x, const NdProfile& y) {
  if (!(x.shape() == y.shape()))
    throw ShapeMismatch("profiles have different shapes");
}

std::optional<NdProfile> meet(const NdProfile& x, const NdProfile& y) {
  require_same_shape(x, y);
  std::vector<StrategySet> cells(x.cells().size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cells[i] = x.cell(i) & y.cell(i);
    if (cells[i] == 0) return std::nullopt;
  }
  return NdProfile(x.shape_ptr(), std::move(cells));
}

bool leq(const NdProfile& x, const NdProfile& y) {
  require_same_shape(x, y);
  for (std::size_t i = 0; i < x.cells().size(); ++i)
    if (x.cell(i) & ~y.cell(i)) return false;
  return true;
}

bool leq(const std::optional<NdProfile>& x, const std::optional<NdProfile>& y) {
  if (!x) return true;
  if (!y) return false;
  return leq(*x, *y);
}

namespace detail {

std::vector<std::pair<std::size_t, StrategyId>> removed_between(
    const NdProfile& from, const NdProfile& to) {
  std::vector<std::pair<std::size_t, StrategyId>> removed;
  for (std::size_t i = 0; i < from.cells().size(); ++i)
    for (StrategyId s : set_elements(from.cell(i) & ~to.cell(i)))
      removed.emplace_back(i, s);
  return removed;
}

void throw_collapsed(SolveTrace trace, const NdProfile& from,
                     const std::vector<StrategySet>& shrunk) {
  std::string emptied;
  std::vector<std::pair<std::size_t, StrategyId>> removed;
  for (std::size_t i = 0; i < shrunk.size(); ++i) {
    for (StrategyId s : set_elements(from.cell(i) & ~shrunk[i]))
      removed.emplace_back(i, s);
    if (shrunk[i] == 0) {
      if (!emptied.empty()) emptied += ", ";
      emptied += std::to_string(i);
    }
  }
  trace.removed.push_back(std::move(removed));
  std::string msg = "elimination emptied axis " + emptied + " after " +
                    std::to_string(trace.steps.size() - 1) +
                    " completed rounds";
  throw CollapsedToBottom(std::move(msg), std::move(trace));
}

}  // namespace detail

}  // namespace ndeq::lattice
