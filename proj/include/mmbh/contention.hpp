#pragma once

// Contention graph over flows. Adjacent flows (shared endpoint) always
// conflict; other pairs conflict when their worst directed interference at
// full power, normalised by that power, reaches the threshold sigma.

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "mmbh/model.hpp"

namespace mmbh {

// max(Pr(j -> i), Pr(i -> j)) at full power, MUI factor included.
double pair_weight(const Flow& flow_i, const Flow& flow_j, const Scenario& scenario,
                   const SystemParams& params);

class ContentionGraph {
 public:
  ContentionGraph() = default;

  // Graph with explicit edges and no weights; used for hand-built instances.
  static ContentionGraph from_edges(std::vector<FlowId> vertices,
                                    const std::vector<std::pair<FlowId, FlowId>>& edges);

  const std::vector<FlowId>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double sigma() const { return sigma_; }
  double max_power_w() const { return max_power_w_; }

  bool has_edge(FlowId a, FlowId b) const;
  // Pair weight in watts; empty for adjacent pairs (never evaluated) and for
  // graphs built from explicit edges.
  std::optional<double> weight(FlowId a, FlowId b) const;
  bool adjacent(FlowId a, FlowId b) const;

  std::vector<FlowId> neighbors(FlowId v) const;
  std::size_t degree(FlowId v) const;
  std::size_t edge_count() const;

  // Unordered edges with a < b, ascending.
  std::vector<std::pair<FlowId, FlowId>> edges() const;

  // Position of v in vertices().
  std::size_t index(FlowId v) const;

  // Debug listing: one "i j weight" line per unordered pair, weight in watts,
  // "adjacent" in place of the weight for pairs that share a node.
  void write_edge_list(std::ostream& out) const;

 private:
  friend ContentionGraph build_graph(const Scenario&, const SystemParams&);

  std::vector<FlowId> vertices_;
  std::vector<char> edge_;          // n x n, symmetric
  std::vector<char> adjacent_;      // n x n, symmetric
  std::vector<double> weight_;      // n x n, NaN when not evaluated
  double sigma_ = 0.0;
  double max_power_w_ = 0.0;
};

// Vertices follow scenario flow order. Ties Wij / Pt == sigma are edges.
ContentionGraph build_graph(const Scenario& scenario, const SystemParams& params);

}  // namespace mmbh
