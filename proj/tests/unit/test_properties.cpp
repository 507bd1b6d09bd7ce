#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "mmbh/baselines.hpp"
#include "mmbh/experiment.hpp"
#include "mmbh/metrics.hpp"

using namespace mmbh;

namespace {

constexpr int kInstances = 200;

SystemParams desk_params() {
  SystemParams p = SystemParams::defaults();
  p.cta_count = 200;
  return p;
}

DeskInstanceOptions desk_options(std::uint32_t i) {
  return {2 + static_cast<int>(i % 9), 12, 100.0};
}

}  // namespace

TEST_CASE("schedule invariants over random desk instances") {
  const SystemParams p = desk_params();
  std::size_t multi = 0;
  for (std::uint32_t i = 0; i < kInstances; ++i) {
    CAPTURE(i);
    const Scenario sc = desk_instance(desk_options(i), p, 11, i);
    const SchemeSet s = run_schemes(sc, p);
    const LinkTable links(s.served, p);

    std::map<FlowId, int> seen;
    int total = 0;
    for (const auto& pr : s.proposed.pairings) {
      total += pr.ctas;
      for (std::size_t a = 0; a < pr.flows.size(); ++a) {
        ++seen[pr.flows[a]];
        for (std::size_t b = a + 1; b < pr.flows.size(); ++b) {
          CHECK_FALSE(s.graph.has_edge(pr.flows[a], pr.flows[b]));
        }
      }
      if (pr.flows.size() > 1) ++multi;
    }
    CHECK(total == p.cta_count);
    CHECK(seen.size() == sc.flows.size());
    for (const auto& [f, n] : seen) CHECK(n == 1);

    const auto mp = evaluate(s.proposed, links);
    for (const auto& fr : mp.per_flow) {
      CHECK(fr.power_w <= p.max_power_w);
      if (!s.proposed.control(fr.flow)->clamped) {
        CHECK(fr.throughput_bps >= fr.demand_bps * (1.0 - 1e-9));
      }
    }

    REQUIRE(s.ctfp.pairings.size() == s.proposed.pairings.size());
    for (std::size_t k = 0; k < s.ctfp.pairings.size(); ++k) {
      CHECK(s.ctfp.pairings[k].flows == s.proposed.pairings[k].flows);
      CHECK(s.ctfp.pairings[k].ctas == s.proposed.pairings[k].ctas);
    }
    CHECK(evaluate(s.ctfp, links).total_energy_j >= mp.total_energy_j);

    // Flows sharing a pairing sit below the threshold, so the bound is strict.
    for (const auto& a : analyse(s.proposed, s.plan, links)) {
      if (a.pairing_size > 1) CHECK(a.energy_ratio < a.ratio_bound);
    }
  }
  // Not a vacuous run: concurrency must actually occur.
  CHECK(multi > kInstances / 2);
}

TEST_CASE("power-halving identity") {
  for (int k = 1; k <= 100; ++k) {
    const double x = 0.1 * k;
    CAPTURE(x);
    CHECK(std::pow(2.0, x / 2.0) - 1.0 < (std::pow(2.0, x) - 1.0) / 2.0);
  }
}
