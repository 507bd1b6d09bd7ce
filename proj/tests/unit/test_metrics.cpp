#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "mmbh/baselines.hpp"
#include "mmbh/error.hpp"
#include "mmbh/metrics.hpp"
#include "reference_values.hpp"

using namespace mmbh;

TEST_CASE("theta condition") {
  const SystemParams p = SystemParams::defaults();
  CHECK(ref::kThetaConditionReal == doctest::Approx(6418.029449629123));
  CHECK(theta_condition(2e9, p) == 6418);
  CHECK(theta_condition(4e9, p) == 12836);
  CHECK(theta_condition(1e9, p) == 3209);
  SUBCASE("an exact integer bound is excluded") {
    SystemParams q = p;
    q.efficiency = std::log(2.0);
    q.bandwidth_hz = 1.0;
    q.cta_count = 1;
    CHECK(theta_condition(7.0, q) == 6);
    CHECK(theta_condition(7.5, q) == 7);
  }
  CHECK_THROWS_AS(theta_condition(0.0, p), DomainError);
}

TEST_CASE("ratio bound and sigma threshold") {
  const SystemParams p = SystemParams::defaults();
  const auto sc = fixture::make_scenario({{0, 0}, {20, 0}, {-10, 2}, {30, 3}}, {{1, 2}, {3, 4}});
  const LinkTable links(sc, p);
  const double signal = links.signal_gain(1) * p.max_power_w;
  CHECK(energy_ratio_bound(3e9, 2, 3000, 2000, signal, p) ==
        doctest::Approx(ref::kCollinearRatioBound1).epsilon(1e-12));
  CHECK(sigma_alpha(3e9, 2, 3000, 2000, signal, p) ==
        doctest::Approx(ref::kCollinearAlpha1).epsilon(1e-12));
  CHECK(sigma_alpha(3e9, 1, 3000, 2000, signal, p) == kUnboundedSigma);

  SUBCASE("alpha is where the bound crosses one") {
    SystemParams at = p;
    at.sigma = sigma_alpha(3e9, 2, 3000, 2000, signal, p);
    CHECK(energy_ratio_bound(3e9, 2, 3000, 2000, signal, at) == doctest::Approx(1.0).epsilon(1e-9));
    at.sigma *= 0.5;
    CHECK(energy_ratio_bound(3e9, 2, 3000, 2000, signal, at) < 1.0);
  }
  SUBCASE("more airtime lowers the bound past the theta condition") {
    const long long tc = theta_condition(3e9, p);
    const int t0 = static_cast<int>(tc) - 200;
    CHECK(energy_ratio_bound(3e9, 2, t0 + 100, 2000, signal, p) <
          energy_ratio_bound(3e9, 2, t0, 2000, signal, p));
  }
  CHECK_THROWS_AS(energy_ratio_bound(3e9, 2, 0, 2000, signal, p), DomainError);
}

TEST_CASE("evaluate") {
  SystemParams p = SystemParams::defaults();
  p.cta_count = 200;
  const auto sc = fixture::make_scenario({{0, 0}, {10, 0}, {0, 50}, {10, 50}, {60, 20}, {80, 20}},
                                         {{1, 2}, {3, 4}, {5, 6}}, 1e9);
  const auto set = run_schemes(sc, p, ReferenceMode::demand);
  const LinkTable links(set.served, p);

  SUBCASE("TDMA is Pt over the planned CTAs") {
    const auto m = evaluate(set.tdma, links);
    CHECK(m.total_energy_j ==
          doctest::Approx(p.max_power_w * set.plan.total_ctas() * p.cta_duration_s));
    for (const auto& f : m.per_flow) {
      CHECK(f.rate_bps == doctest::Approx(links.tdma_rate(f.flow)));
      CHECK(f.throughput_bps >= f.demand_bps * (1 - 1e-9));
    }
    CHECK(m.energy_efficiency == doctest::Approx(m.network_throughput_bps / m.total_energy_j));
  }
  SUBCASE("pairing order does not change the report") {
    Schedule flipped = set.proposed;
    std::reverse(flipped.pairings.begin(), flipped.pairings.end());
    const auto a = evaluate(set.proposed, links);
    const auto b = evaluate(flipped, links);
    CHECK(a.total_energy_j == doctest::Approx(b.total_energy_j).epsilon(1e-15));
    CHECK(a.network_throughput_bps == doctest::Approx(b.network_throughput_bps).epsilon(1e-15));
    REQUIRE(a.per_flow.size() == b.per_flow.size());
    for (std::size_t i = 0; i < a.per_flow.size(); ++i) CHECK(a.per_flow[i].flow == b.per_flow[i].flow);
  }
  SUBCASE("compare") {
    const auto r = compare(evaluate(set.proposed, links), evaluate(set.tdma, links));
    CHECK(r.baseline == "tdma");
    CHECK(r.energy_ratio > 0.0);
    CHECK(r.energy_ratio < 1.0);
    MetricsReport zero;
    CHECK_THROWS_AS(compare(zero, zero), DomainError);
  }
  SUBCASE("analysis against the plan") {
    const auto rows = analyse(set.proposed, set.plan, links);
    REQUIRE(rows.size() == 3);
    for (const auto& a : rows) {
      CHECK(a.energy_ratio ==
            doctest::Approx(set.proposed.power_of(a.flow) * a.theta /
                            (p.max_power_w * set.plan.ctas_of(a.flow))));
      // Every co-pairing coupling is below sigma here, so the bound holds.
      CHECK(a.energy_ratio <= a.ratio_bound * (1 + 1e-9));
    }
  }
}

TEST_CASE("sigma bound sentinel for singleton schedules") {
  SystemParams p = SystemParams::defaults();
  p.cta_count = 100;
  p.sigma = 0.0;
  const auto sc = fixture::make_scenario({{0, 0}, {10, 0}, {0, 50}, {10, 50}}, {{1, 2}, {3, 4}}, 5e8);
  const auto set = run_schemes(sc, p, ReferenceMode::demand);
  CHECK(sigma_bound(set.proposed, set.plan, LinkTable(set.served, p)) == kUnboundedSigma);
}

TEST_CASE("motivating example energy") {
  const auto ex = fixture::motivating_example();
  const auto set = run_schemes(ex.scenario, ex.params, ReferenceMode::demand);
  const LinkTable links(set.served, ex.params);
  const auto r = compare(evaluate(set.proposed, links), evaluate(set.tdma, links));
  CHECK(r.energy_ratio == doctest::Approx(0.5257).epsilon(1e-3));
}
