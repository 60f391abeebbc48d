#include <doctest.h>

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "ndeq/lattice.hpp"
#include "ndeq/oracle.hpp"
#include "ndeq/strategic.hpp"
#include "testutil.hpp"

using namespace ndeq;
using namespace ndeq::lattice;

namespace {

std::shared_ptr<const ProfileShape> make_shape(
    std::vector<std::uint32_t> sizes) {
  std::vector<ProfileAxis> axes;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    axes.push_back({static_cast<AgentId>(i), 0, sizes[i]});
  return std::make_shared<const ProfileShape>(std::move(axes));
}

std::shared_ptr<const ProfileShape> random_shape(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> n_axes(1, 3);
  std::uniform_int_distribution<std::uint32_t> n_strats(1, 3);
  std::vector<std::uint32_t> sizes(n_axes(rng));
  for (auto& s : sizes) s = n_strats(rng);
  return make_shape(std::move(sizes));
}

std::optional<NdProfile> omeet(const std::optional<NdProfile>& x,
                               const std::optional<NdProfile>& y) {
  if (!x || !y) return std::nullopt;
  return meet(*x, *y);
}

// All ascending chains of distinct profiles below `x`, built by extending
// each chain with every strictly larger profile. Only usable on tiny shapes.
std::vector<std::vector<NdProfile>> chains_below(
    const std::vector<NdProfile>& all, const NdProfile& x) {
  std::vector<NdProfile> inside;
  for (const auto& p : all)
    if (leq(p, x)) inside.push_back(p);
  std::vector<std::vector<NdProfile>> chains;
  std::vector<NdProfile> cur;
  auto extend = [&](auto&& self, std::size_t from) -> void {
    if (!cur.empty()) chains.push_back(cur);
    for (std::size_t i = from; i < inside.size(); ++i) {
      if (!cur.empty() &&
          !(leq(cur.back(), inside[i]) && !(cur.back() == inside[i])))
        continue;
      cur.push_back(inside[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  std::sort(inside.begin(), inside.end(),
            [](const NdProfile& a, const NdProfile& b) {
              return a.pure_count() < b.pure_count();
            });
  extend(extend, 0);
  return chains;
}

}  // namespace

TEST_CASE("profile shape validates its axes") {
  CHECK_THROWS_AS(ProfileShape({}), std::invalid_argument);
  CHECK_THROWS_AS(ProfileShape({{0, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(ProfileShape({{0, 0, 33}}), std::invalid_argument);
  CHECK_THROWS_AS(ProfileShape({{0, 0, 2}, {0, 0, 3}}), std::invalid_argument);
  CHECK_NOTHROW(ProfileShape({{0, 0, 32}}));

  ProfileShape s({{0, 0, 2}, {0, 1, 3}, {1, 0, 2}});
  CHECK(s.size() == 3);
  CHECK(s.total_strategies() == 7);
  CHECK(s.axis_index(0, 0) == 0);
  CHECK(s.axis_index(0, 1) == 1);
  CHECK(s.axis_index(1, 0) == 2);
  CHECK_THROWS_AS(s.axis_index(2, 0), UnknownAgent);
  CHECK_THROWS_AS(s.axis_index(0, 2), UnknownNode);
  CHECK(s.axis(1).universe_size == 3);
}

TEST_CASE("profiles reject malformed cell vectors") {
  auto shape = make_shape({2, 2});
  CHECK_THROWS_AS(NdProfile(nullptr, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(NdProfile(shape, {1}), MalformedProfile);
  CHECK_THROWS_AS(NdProfile(shape, {1, 0}), MalformedProfile);
  CHECK_THROWS_AS(NdProfile(shape, {1, 0b100}), MalformedProfile);

  NdProfile p(shape, {0b11, 0b10});
  CHECK(p.pure_count() == 2);
  CHECK(p.cell(0) == 0b11);
  CHECK(p.with_cell(0, 0b01).cells() == std::vector<StrategySet>{0b01, 0b10});
  CHECK_THROWS_AS(p.with_cell(0, 0), MalformedProfile);
  CHECK_THROWS_AS(p.with_cell(1, 0b101), MalformedProfile);

  NdProfile t = NdProfile::top(shape);
  CHECK(t.cells() == std::vector<StrategySet>{0b11, 0b11});
  CHECK(t.pure_count() == 4);
  CHECK(leq(p, t));
  CHECK_THROWS_AS(NdProfile::top(nullptr), std::invalid_argument);
}

TEST_CASE("meet intersects cell-wise and reports collapse as nullopt") {
  auto shape = make_shape({3, 3});
  NdProfile x(shape, {0b011, 0b110});
  NdProfile y(shape, {0b110, 0b011});
  auto m = meet(x, y);
  REQUIRE(m.has_value());
  CHECK(m->cells() == std::vector<StrategySet>{0b010, 0b010});

  NdProfile t = NdProfile::top(shape);
  CHECK(meet(x, t) == x);
  CHECK(meet(t, x) == x);

  NdProfile z(shape, {0b100, 0b011});
  CHECK(!meet(x, z).has_value());

  // Equal axes in a separately allocated shape still count as the same shape.
  auto twin = make_shape({3, 3});
  CHECK(meet(x, NdProfile::top(twin)) == x);

  auto other = make_shape({2, 2});
  CHECK_THROWS_AS(meet(x, NdProfile::top(other)), ShapeMismatch);
}

TEST_CASE("leq is cell-wise inclusion with bottom below everything") {
  auto shape = make_shape({2, 2});
  NdProfile t = NdProfile::top(shape);
  NdProfile p(shape, {0b01, 0b01});
  CHECK(leq(p, p));
  CHECK(leq(p, t));
  CHECK(!leq(t, p));
  CHECK_THROWS_AS(leq(p, NdProfile::top(make_shape({3}))), ShapeMismatch);

  std::optional<NdProfile> bot;
  CHECK(leq(bot, bot));
  CHECK(leq(bot, std::optional<NdProfile>(p)));
  CHECK(!leq(std::optional<NdProfile>(p), bot));
  CHECK(leq(std::optional<NdProfile>(p), std::optional<NdProfile>(t)));
}

TEST_CASE("meet is the greatest lower bound") {
  std::mt19937 rng(7201);
  int collapsed = 0, met = 0;
  for (int round = 0; round < 1000; ++round) {
    auto shape = random_shape(rng);
    NdProfile x = testutil::random_profile(rng, shape);
    NdProfile y = testutil::random_profile(rng, shape);
    NdProfile z = testutil::random_profile(rng, shape);

    CHECK(meet(x, x) == x);
    auto xy = meet(x, y);
    CHECK(xy == meet(y, x));
    CHECK(omeet(xy, z) == omeet(meet(x, z), y));
    if (xy) {
      ++met;
      CHECK(leq(*xy, x));
      CHECK(leq(*xy, y));
    } else {
      ++collapsed;
    }
    if (leq(z, x) && leq(z, y)) {
      REQUIRE(xy.has_value());
      CHECK(leq(z, *xy));
    }
  }
  CHECK(met > 0);
  CHECK(collapsed > 0);
}

TEST_CASE("iteration stops at the first pre-fixed point") {
  auto shape = make_shape({3, 2});
  NdProfile x0(shape, {0b101, 0b11});

  auto [fix, trace] =
      iterate_prefixpoint([](const NdProfile& p) { return p; }, x0);
  CHECK(fix == x0);
  CHECK(trace.steps == std::vector<NdProfile>{x0, x0});
  REQUIRE(trace.removed.size() == 1);
  CHECK(trace.removed[0].empty());
  CHECK(trace.rounds() == 1);

  NdProfile t = NdProfile::top(shape);
  auto [fix2, trace2] =
      iterate_prefixpoint([&](const NdProfile&) { return t; }, x0);
  CHECK(fix2 == x0);
  CHECK(trace2.rounds() == 1);

  // A constant image below the start takes one shrinking round plus the
  // fixed point witness round.
  NdProfile c(shape, {0b001, 0b11});
  auto [fix3, trace3] = iterate_prefixpoint(
      [&](const NdProfile&) { return c; }, t);
  CHECK(fix3 == c);
  CHECK(trace3.steps == std::vector<NdProfile>{t, c, c});
  REQUIRE(trace3.removed.size() == 2);
  CHECK(trace3.removed[0] ==
        std::vector<std::pair<std::size_t, StrategyId>>{{0, 1}, {0, 2}});
  CHECK(trace3.removed[1].empty());

  CHECK_THROWS_AS(
      iterate_prefixpoint(
          [&](const NdProfile&) { return NdProfile::top(make_shape({4})); },
          x0),
      ShapeMismatch);
}

TEST_CASE("iterated elimination of the five strategy grid") {
  strategic::StrategicGame g = testutil::grid5x5();
  auto step = [&](const NdProfile& p) {
    return strategic::combined_br(g, p, strategic::BRVariant::FULL);
  };
  NdProfile t = NdProfile::top(g.shape());
  auto [fix, trace] = iterate_prefixpoint(step, t);

  CHECK(fix.cells() == std::vector<StrategySet>{0b00011, 0b00011});
  using Removed = std::vector<std::pair<std::size_t, StrategyId>>;
  REQUIRE(trace.removed.size() == 5);
  CHECK(trace.removed[0] == Removed{{0, 3}, {0, 4}, {1, 4}});
  CHECK(trace.removed[1] == Removed{{1, 3}});
  CHECK(trace.removed[2] == Removed{{0, 2}});
  CHECK(trace.removed[3] == Removed{{1, 2}});
  CHECK(trace.removed[4].empty());
  CHECK(trace.rounds() <= 1 + g.shape()->total_strategies());
  CHECK(leq(fix, step(fix)));
}

TEST_CASE("descent lands on a pre-fixed point within the round budget") {
  std::mt19937 rng(7202);
  for (int round = 0; round < 300; ++round) {
    auto shape = random_shape(rng);
    // Image of each single strategy, extended to sets by union: the step is
    // monotone by construction.
    std::vector<std::vector<StrategySet>> img(shape->size());
    for (std::size_t i = 0; i < img.size(); ++i) {
      StrategySet full = full_strategy_set(shape->axis(i).universe_size);
      std::uniform_int_distribution<StrategySet> pick(1, full);
      img[i].resize(shape->axis(i).universe_size);
      for (auto& m : img[i]) m = pick(rng);
    }
    auto step = [&](const NdProfile& p) {
      std::vector<StrategySet> cells(p.cells().size());
      for (std::size_t i = 0; i < cells.size(); ++i)
        for (StrategyId s : set_elements(p.cell(i))) cells[i] |= img[i][s];
      return NdProfile(p.shape_ptr(), std::move(cells));
    };

    NdProfile t = NdProfile::top(shape);
    auto [fix, trace] = iterate_prefixpoint(step, t);
    CHECK(leq(fix, step(fix)));
    CHECK(trace.rounds() <= 1 + shape->total_strategies());
    CHECK(trace.steps.size() == trace.removed.size() + 1);
    CHECK(trace.steps.front() == t);
    CHECK(trace.steps.back() == fix);

    // Monotone steps keep every profile below its own image inside the
    // result, so the descent finds the greatest such profile.
    for (const auto& z : oracle::all_nd_profiles(shape))
      if (leq(z, step(z))) CHECK(leq(z, fix));
  }
}

TEST_CASE("collapse carries the elimination trace") {
  auto shape = make_shape({2, 2});
  NdProfile t = NdProfile::top(shape);

  NdProfile left(shape, {0b01, 0b11});
  NdProfile right(shape, {0b10, 0b11});
  try {
    iterate_prefixpoint([&](const NdProfile&) { return right; }, left);
    FAIL("expected collapse");
  } catch (const CollapsedToBottom& e) {
    CHECK(e.trace.steps == std::vector<NdProfile>{left});
    REQUIRE(e.trace.removed.size() == 1);
    CHECK(e.trace.removed[0] ==
          std::vector<std::pair<std::size_t, StrategyId>>{{0, 0}});
    CHECK(std::string(e.what()).find("emptied axis 0") != std::string::npos);
    CHECK(std::string(e.what()).find("0 completed rounds") !=
          std::string::npos);
  }

  // An optional-returning step may name bottom directly.
  auto bottom_step = [](const NdProfile&) { return std::optional<NdProfile>(); };
  try {
    iterate_prefixpoint(bottom_step, t);
    FAIL("expected collapse");
  } catch (const CollapsedToBottom& e) {
    REQUIRE(e.trace.removed.size() == 1);
    CHECK(e.trace.removed[0].size() == 4);
    CHECK(std::string(e.what()).find("emptied axis 0, 1") !=
          std::string::npos);
  }

  // Collapse after a successful first round keeps the earlier snapshots.
  NdProfile mid(shape, {0b01, 0b11});
  NdProfile clash(shape, {0b10, 0b11});
  auto two_step = [&](const NdProfile& p) { return p == t ? mid : clash; };
  try {
    iterate_prefixpoint(two_step, t);
    FAIL("expected collapse");
  } catch (const CollapsedToBottom& e) {
    CHECK(e.trace.steps == std::vector<NdProfile>{t, mid});
    REQUIRE(e.trace.removed.size() == 2);
    CHECK(e.trace.removed[0] ==
          std::vector<std::pair<std::size_t, StrategyId>>{{0, 1}});
    CHECK(e.trace.removed[1] ==
          std::vector<std::pair<std::size_t, StrategyId>>{{0, 0}});
    CHECK(std::string(e.what()).find("1 completed rounds") !=
          std::string::npos);
  }
}

TEST_CASE("meeting point check walks the supplied chains") {
  auto shape = make_shape({2, 2});
  NdProfile t = NdProfile::top(shape);
  NdProfile p(shape, {0b01, 0b11});
  NdProfile q(shape, {0b01, 0b01});

  auto id = [](const NdProfile& x) { return x; };
  CHECK(check_meeting_point(id, t, {{q, p, t}, {p}, {t}}));
  CHECK(check_meeting_point(id, t, {}));

  auto bot = [](const NdProfile&) { return std::optional<NdProfile>(); };
  CHECK(!check_meeting_point(bot, t, {{t}}));

  // Images that pairwise clash fail even though each one is non-bottom.
  auto flip = [&](const NdProfile& x) {
    return x == q ? NdProfile(shape, {0b10, 0b11}) : x;
  };
  CHECK(!check_meeting_point(flip, t, {{q, p}}));
  CHECK(check_meeting_point(flip, t, {{p, t}}));
  CHECK(check_meeting_point(flip, t, {{q}}));

  CHECK_THROWS_AS(check_meeting_point(id, t, {{}}), ChainError);
  CHECK_THROWS_AS(check_meeting_point(id, p, {{t, p}}), ChainError);
  CHECK_THROWS_AS(check_meeting_point(id, q, {{p}}), ChainError);
}

TEST_CASE("grid elimination operator meets at the top") {
  strategic::StrategicGame g = testutil::grid5x5();
  auto step = [&](const NdProfile& p) {
    return strategic::combined_br(g, p, strategic::BRVariant::FULL);
  };
  NdProfile t = NdProfile::top(g.shape());

  std::mt19937 rng(7203);
  std::vector<std::vector<NdProfile>> chains;
  for (int i = 0; i < 60; ++i) {
    NdProfile low = testutil::random_profile(rng, g.shape());
    std::vector<NdProfile> chain{low};
    while (!(chain.back() == t)) {
      NdProfile up = chain.back();
      for (std::size_t a = 0; a < up.cells().size(); ++a)
        if (rng() % 2) up = up.with_cell(a, t.cell(a));
      if (!(up == chain.back())) chain.push_back(up);
      if (chain.size() >= 4) break;
    }
    chains.push_back(std::move(chain));
  }
  CHECK(check_meeting_point(step, t, chains));
}

TEST_CASE("meeting point survives one elimination step") {
  auto shape = make_shape({2, 2});
  NdProfile t = NdProfile::top(shape);
  std::vector<NdProfile> all = oracle::all_nd_profiles(shape);
  REQUIRE(all.size() == 9);

  std::mt19937 rng(7204);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  int passed = 0, failed = 0;
  for (int round = 0; round < 300; ++round) {
    std::map<std::vector<StrategySet>, NdProfile> table;
    for (const auto& p : all) table.emplace(p.cells(), all[pick(rng)]);
    auto step = [&](const NdProfile& p) { return table.at(p.cells()); };

    if (!check_meeting_point(step, t, chains_below(all, t))) {
      ++failed;
      continue;
    }
    ++passed;
    auto x1 = meet(t, step(t));
    REQUIRE(x1.has_value());
    CHECK(check_meeting_point(step, *x1, chains_below(all, *x1)));
  }
  CHECK(passed > 0);
  CHECK(failed > 0);
}
