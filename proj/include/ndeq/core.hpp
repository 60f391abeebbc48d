#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndeq {

// Identifiers are dense indices; display names live on the owning game object.
using OutcomeId = std::uint32_t;
using AgentId = std::uint32_t;
using NodeId = std::uint32_t;
using StrategyId = std::uint32_t;
using ContextId = std::uint32_t;

// A set of strategies within one axis, as a bitmask. Axis universes are
// capped at kMaxStrategies strategies, which is plenty at desk scale.
using StrategySet = std::uint32_t;

inline constexpr std::uint32_t kMaxStrategies = 32;

inline constexpr StrategySet full_strategy_set(std::uint32_t n) {
  return n >= 32 ? ~StrategySet{0} : (StrategySet{1} << n) - 1;
}

inline constexpr bool set_contains(StrategySet s, StrategyId i) {
  return (s >> i) & 1u;
}

inline constexpr std::uint32_t set_size(StrategySet s) {
  return static_cast<std::uint32_t>(__builtin_popcount(s));
}

inline std::vector<StrategyId> set_elements(StrategySet s) {
  std::vector<StrategyId> out;
  for (StrategyId i = 0; s != 0; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

// Sorted, duplicate-free vector of outcome identifiers.
using OutcomeSet = std::vector<OutcomeId>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// order
struct CycleError : Error { using Error::Error; };
struct UnknownOutcome : Error { using Error::Error; };
struct EmptyRestriction : Error { using Error::Error; };
struct EmptySet : Error { using Error::Error; };
struct ChainError : Error { using Error::Error; };

// lattice
struct ShapeMismatch : Error { using Error::Error; };

// strategic / multigame
struct MalformedProfile : Error { using Error::Error; };
struct UnknownAgent : Error { using Error::Error; };
struct UnknownStrategy : Error { using Error::Error; };
struct UnknownNode : Error { using Error::Error; };
struct EmptyCell : Error { using Error::Error; };

// oracle
struct CapExceeded : Error { using Error::Error; };

// cli
struct KindError : Error { using Error::Error; };

}  // namespace ndeq
