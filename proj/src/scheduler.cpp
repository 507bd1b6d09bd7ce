#include "mmbh/scheduler.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "mmbh/error.hpp"

namespace mmbh {

bool Pairing::contains(FlowId f) const {
  return std::binary_search(flows.begin(), flows.end(), f);
}

std::size_t vertex_degree(const ContentionGraph& graph, FlowId vertex,
                          const std::vector<FlowId>& active) {
  if (std::find(active.begin(), active.end(), vertex) == active.end()) {
    throw DomainError(fmt::format("vertex {} is not in the active set", vertex));
  }
  std::size_t d = 0;
  for (FlowId w : active) {
    if (w != vertex && graph.has_edge(vertex, w)) ++d;
  }
  return d;
}

std::vector<Pairing> schedule(const ContentionGraph& graph) {
  if (graph.size() == 0) throw DomainError("cannot schedule an empty graph");
  std::vector<FlowId> remaining = graph.vertices();
  std::sort(remaining.begin(), remaining.end());

  std::vector<Pairing> out;
  while (!remaining.empty()) {
    std::vector<FlowId> active = remaining;  // sorted, so the first minimum is the lowest id
    Pairing p;
    p.index = static_cast<int>(out.size()) + 1;
    while (!active.empty()) {
      FlowId best = active.front();
      std::size_t best_deg = vertex_degree(graph, best, active);
      for (FlowId w : active) {
        const std::size_t d = vertex_degree(graph, w, active);
        if (d < best_deg) {
          best = w;
          best_deg = d;
        }
      }
      p.flows.push_back(best);
      std::erase_if(active, [&](FlowId w) { return w == best || graph.has_edge(best, w); });
    }
    std::sort(p.flows.begin(), p.flows.end());
    std::erase_if(remaining, [&](FlowId w) { return p.contains(w); });
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace mmbh
