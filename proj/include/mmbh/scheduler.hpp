#pragma once

// Minimum-degree greedy independent-set extraction. Each round peels one
// independent set (a pairing) off the remaining flows until none are left.

#include <map>
#include <vector>

#include "mmbh/contention.hpp"

namespace mmbh {

struct Pairing {
  int index = 0;                  // 1-based, creation order
  std::vector<FlowId> flows;      // ascending
  int ctas = 0;                   // theta, filled by power control
  std::map<FlowId, double> power; // watts, filled by power control

  bool contains(FlowId f) const;
};

// Neighbours of `vertex` inside `active`.
std::size_t vertex_degree(const ContentionGraph& graph, FlowId vertex,
                          const std::vector<FlowId>& active);

// Ties on degree go to the lowest flow id.
std::vector<Pairing> schedule(const ContentionGraph& graph);

}  // namespace mmbh
