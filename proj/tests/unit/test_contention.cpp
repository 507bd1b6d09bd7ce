#include <doctest.h>

#include <limits>
#include <sstream>

#include "fixtures.hpp"
#include "mmbh/contention.hpp"
#include "mmbh/error.hpp"
#include "reference_values.hpp"

using namespace mmbh;

namespace {
// Two parallel 10 m flows, 50 m apart.
Scenario parallel() {
  return fixture::make_scenario({{0, 0}, {10, 0}, {0, 50}, {10, 50}}, {{1, 2}, {3, 4}});
}
}  // namespace

TEST_CASE("pair weight") {
  SystemParams p = SystemParams::defaults();
  const auto sc = parallel();
  SUBCASE("mirror geometry is symmetric and matches the reference") {
    const double w = pair_weight(sc.flows[0], sc.flows[1], sc, p);
    CHECK(w == doctest::Approx(ref::kParallelWeight).epsilon(1e-12));
    CHECK(interference_power(sc.flows[0], sc.flows[1], p.max_power_w, sc, p) ==
          doctest::Approx(interference_power(sc.flows[1], sc.flows[0], p.max_power_w, sc, p)));
    CHECK(pair_weight(sc.flows[1], sc.flows[0], sc, p) == w);
  }
  SUBCASE("no MUI means no weight") {
    p.mui_factor = 0.0;
    CHECK(pair_weight(sc.flows[0], sc.flows[1], sc, p) == 0.0);
  }
}

TEST_CASE("graph construction") {
  SystemParams p = SystemParams::defaults();
  SUBCASE("single flow") {
    const auto g = build_graph(fixture::make_scenario({{0, 0}, {1, 0}}, {{1, 2}}), p);
    CHECK(g.size() == 1);
    CHECK(g.edge_count() == 0);
  }
  SUBCASE("adjacency survives any threshold") {
    p.sigma = 1e300;
    const auto g = build_graph(fixture::make_scenario({{0, 0}, {10, 0}, {20, 0}}, {{1, 2}, {2, 3}}), p);
    CHECK(g.has_edge(1, 2));
    CHECK(g.adjacent(1, 2));
    CHECK_FALSE(g.weight(1, 2).has_value());
  }
  SUBCASE("zero threshold connects every pair with positive weight") {
    p.sigma = 0.0;
    const auto sc = fixture::make_scenario(
        {{0, 0}, {10, 0}, {0, 50}, {10, 50}, {60, 60}, {70, 80}}, {{1, 2}, {3, 4}, {5, 6}});
    const auto g = build_graph(sc, p);
    CHECK(g.edge_count() == 3);
  }
  SUBCASE("threshold tie is an edge") {
    const auto sc = parallel();
    const double w = pair_weight(sc.flows[0], sc.flows[1], sc, p);
    p.sigma = w / p.max_power_w;
    CHECK(build_graph(sc, p).has_edge(1, 2));
    p.sigma = std::nextafter(p.sigma, 1.0);
    CHECK_FALSE(build_graph(sc, p).has_edge(1, 2));
  }
  SUBCASE("no self edges and symmetric weights") {
    p.sigma = 1e-10;
    const auto sc = fixture::make_scenario(
        {{0, 0}, {10, 0}, {0, 50}, {10, 50}, {30, 20}, {40, 25}}, {{1, 2}, {3, 4}, {5, 6}});
    const auto g = build_graph(sc, p);
    for (FlowId a : g.vertices()) {
      CHECK_FALSE(g.has_edge(a, a));
      for (FlowId b : g.vertices()) {
        if (a == b) continue;
        CHECK(g.has_edge(a, b) == g.has_edge(b, a));
        CHECK(g.weight(a, b) == g.weight(b, a));
      }
    }
  }
  CHECK_THROWS_AS(build_graph(Scenario{}, p), DomainError);
}

TEST_CASE("raising the threshold never adds an edge") {
  SystemParams p = SystemParams::defaults();
  const auto sc = fixture::make_scenario(
      {{0, 0}, {10, 0}, {5, 8}, {15, 12}, {30, 3}, {38, 30}, {60, 60}, {3, 40}},
      {{1, 2}, {3, 4}, {5, 6}, {7, 8}, {2, 5}, {6, 1}});
  std::size_t prev = std::numeric_limits<std::size_t>::max();
  std::vector<std::pair<FlowId, FlowId>> prev_edges;
  for (double s : {0.0, 1e-14, 1e-12, 1e-10, 1e-8, 1e-6, 1.0}) {
    p.sigma = s;
    const auto g = build_graph(sc, p);
    CHECK(g.edge_count() <= prev);
    const auto e = g.edges();
    for (auto pair : e) {
      if (prev != std::numeric_limits<std::size_t>::max()) {
        CHECK(std::find(prev_edges.begin(), prev_edges.end(), pair) != prev_edges.end());
      }
      if (are_adjacent(sc.flow(pair.first), sc.flow(pair.second))) CHECK(g.adjacent(pair.first, pair.second));
    }
    prev = g.edge_count();
    prev_edges = e;
  }
}

TEST_CASE("hand-built graph and edge list") {
  const auto g = ContentionGraph::from_edges({1, 2, 3}, {{1, 2}, {2, 3}});
  CHECK(g.degree(2) == 2);
  CHECK(g.neighbors(1) == std::vector<FlowId>{2});
  CHECK_THROWS_AS(ContentionGraph::from_edges({1}, {{1, 1}}), DomainError);

  SystemParams p = SystemParams::defaults();
  std::ostringstream os;
  build_graph(fixture::make_scenario({{0, 0}, {10, 0}, {0, 50}, {10, 50}, {20, 0}},
                                     {{1, 2}, {3, 4}, {2, 5}}),
              p)
      .write_edge_list(os);
  const std::string text = os.str();
  CHECK(text.rfind("# contention graph: 3 vertices", 0) == 0);
  CHECK(text.find("1 2 ") != std::string::npos);
  CHECK(text.find("1 3 adjacent") != std::string::npos);
}
