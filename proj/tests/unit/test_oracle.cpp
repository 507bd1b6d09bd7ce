#include <doctest.h>

#include <cstdint>
#include <functional>
#include <vector>

#include "fixtures.hpp"
#include "mmbh/baselines.hpp"
#include "mmbh/error.hpp"
#include "mmbh/experiment.hpp"
#include "mmbh/metrics.hpp"
#include "mmbh/oracle.hpp"

using namespace mmbh;

namespace {

SystemParams small_params(int m = 16) {
  SystemParams p = SystemParams::defaults();
  p.cta_count = m;
  return p;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

struct Counts {
  std::uint64_t partitions = 0;
  std::uint64_t independent = 0;
  std::uint64_t candidates = 0;
};

// Grows blocks one flow at a time, independently of the solver's RGS walk.
Counts count_by_blocks(const ContentionGraph& g, int m) {
  const auto& v = g.vertices();
  Counts c;
  std::vector<std::vector<FlowId>> blocks;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == v.size()) {
      ++c.partitions;
      for (const auto& b : blocks)
        for (std::size_t x = 0; x < b.size(); ++x)
          for (std::size_t y = x + 1; y < b.size(); ++y)
            if (g.has_edge(b[x], b[y])) return;
      ++c.independent;
      c.candidates += binomial(m, static_cast<int>(blocks.size()));
      return;
    }
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      blocks[k].push_back(v[i]);
      rec(i + 1);
      blocks[k].pop_back();
    }
    blocks.push_back({v[i]});
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
  return c;
}

}  // namespace

TEST_CASE("single flow takes the whole superframe") {
  const SystemParams p = small_params();
  auto sc = fixture::make_scenario({{0, 0}, {10, 0}}, {{1, 2}});
  sc.flows[0].demand_bps = LinkTable(sc, p).tdma_rate(1) * 5 / p.cta_count;
  const auto res = solve_exact(sc, p);
  REQUIRE(res.feasible);
  CHECK(res.partitions == 1);
  CHECK(res.candidates == 16);
  CHECK(res.schedule.pairings.at(0).ctas == 16);
  CHECK(res.energy_j < p.max_power_w * 5 * p.cta_duration_s);
  CHECK(check_feasible(res.schedule, sc, p).ok);
}

TEST_CASE("adjacent flows only admit singletons") {
  const SystemParams p = small_params();
  const auto sc = fixture::make_scenario({{0, 0}, {10, 0}, {20, 0}}, {{1, 2}, {2, 3}}, 1e9);
  const auto res = solve_exact(sc, p);
  CHECK(res.partitions == 2);
  CHECK(res.independent_partitions == 1);
  CHECK(res.rejected_independence == 1);
  CHECK(res.candidates == binomial(16, 2));
  REQUIRE(res.feasible);
  CHECK(res.schedule.pairings.size() == 2);
  CHECK(res.partition == std::vector<int>{0, 1});
}

TEST_CASE("enumeration counts match an independent enumerator") {
  const SystemParams p = small_params(12);
  for (int n = 1; n <= 4; ++n) {
    for (std::uint32_t i = 0; i < 6; ++i) {
      const auto sc = desk_instance({n, 6, 60.0}, p, 7, i);
      const auto served = served_scenario(sc, plan_tdma(sc, p));
      const auto res = solve_exact(served, p);
      const auto want = count_by_blocks(build_graph(served, p), p.cta_count);
      CHECK(res.partitions == want.partitions);
      CHECK(res.independent_partitions == want.independent);
      CHECK(res.candidates == want.candidates);
      CHECK(res.feasible_candidates <= res.candidates);
    }
  }
}

TEST_CASE("oracle never loses to a feasible heuristic schedule") {
  const SystemParams p = small_params();
  for (std::uint32_t i = 0; i < 20; ++i) {
    const int n = 2 + static_cast<int>(i % 3);
    const auto sc = desk_instance({n, 6, 100.0}, p, 3, i);
    const auto plan = plan_tdma(sc, p);
    const auto served = served_scenario(sc, plan);
    const auto res = solve_exact(served, p);
    const LinkTable links(served, p);
    // TDMA at its own CTAs is a candidate of the search, so the oracle is feasible.
    REQUIRE(res.feasible);
    CHECK(check_feasible(res.schedule, served, p).ok);
    CHECK(res.energy_j <= evaluate(tdma_schedule(plan, p), links).total_energy_j * (1 + 1e-12));
    try {
      const auto proposed = proposed_schedule(served, p);
      if (check_feasible(proposed, served, p).ok) {
        CHECK(res.energy_j <= evaluate(proposed, links).total_energy_j * (1 + 1e-12));
      }
    } catch (const DegeneratePairingError&) {
      // a pairing rounded down to zero CTAs; nothing to compare
    }
  }
}

TEST_CASE("limits") {
  const SystemParams p = small_params();
  const auto six = fixture::make_scenario(
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}},
      {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}}, 1e6);
  CHECK_THROWS_AS(solve_exact(six, p), DomainError);
  const auto one = fixture::make_scenario({{0, 0}, {10, 0}}, {{1, 2}}, 1e6);
  CHECK_THROWS_AS(solve_exact(one, small_params(25)), DomainError);
  CHECK_NOTHROW(solve_exact(one, small_params(24)));
}

TEST_CASE("feasibility check") {
  SystemParams p = small_params(20);
  const auto sc = fixture::make_scenario({{0, 0}, {10, 0}, {20, 0}, {0, 60}, {10, 60}},
                                         {{1, 2}, {2, 3}, {4, 5}}, 1e9);
  const auto set = run_schemes(sc, p);
  REQUIRE(check_feasible(set.tdma, set.served, p).ok);
  REQUIRE(check_feasible(set.proposed, set.served, p).ok);

  auto has = [](const FeasibilityReport& r, Constraint c) {
    for (const auto& v : r.violations)
      if (v.constraint == c) return true;
    return false;
  };
  SUBCASE("flow scheduled twice") {
    Schedule s = set.tdma;
    s.pairings.push_back(s.pairings.front());
    const auto r = check_feasible(s, set.served, p);
    CHECK_FALSE(r.ok);
    CHECK(has(r, Constraint::one_pairing));
  }
  SUBCASE("superframe overrun") {
    Schedule s = set.tdma;
    s.pairings.front().ctas += p.cta_count;
    CHECK(has(check_feasible(s, set.served, p), Constraint::superframe));
  }
  SUBCASE("adjacent flows together") {
    Schedule s = set.tdma;
    Pairing merged;
    merged.index = 1;
    merged.flows = {1, 2};
    merged.ctas = 1;
    merged.power = {{1, p.max_power_w}, {2, p.max_power_w}};
    s.pairings = {merged, s.pairings.back()};
    s.pairings.back().index = 2;
    CHECK(has(check_feasible(s, set.served, p), Constraint::independence));
  }
  SUBCASE("throughput and power") {
    Schedule s = set.tdma;
    s.pairings.front().power.begin()->second = p.max_power_w * 0.01;
    CHECK(has(check_feasible(s, set.served, p), Constraint::throughput));
    s.pairings.front().power.begin()->second = p.max_power_w * 1.01;
    CHECK(has(check_feasible(s, set.served, p), Constraint::power));
  }
  CHECK_FALSE(check_feasible(set.tdma, set.served, p).summary().empty());
}
