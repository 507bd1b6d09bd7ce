#include "mmbh/contention.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mmbh/error.hpp"

namespace mmbh {

double pair_weight(const Flow& flow_i, const Flow& flow_j, const Scenario& scenario,
                   const SystemParams& params) {
  const double pt = params.max_power_w;
  return std::max(interference_power(flow_j, flow_i, pt, scenario, params),
                  interference_power(flow_i, flow_j, pt, scenario, params));
}

ContentionGraph ContentionGraph::from_edges(
    std::vector<FlowId> vertices, const std::vector<std::pair<FlowId, FlowId>>& edges) {
  ContentionGraph g;
  g.vertices_ = std::move(vertices);
  const std::size_t n = g.vertices_.size();
  g.edge_.assign(n * n, 0);
  g.adjacent_.assign(n * n, 0);
  g.weight_.assign(n * n, std::numeric_limits<double>::quiet_NaN());
  for (auto [a, b] : edges) {
    if (a == b) throw DomainError(fmt::format("self edge on vertex {}", a));
    const std::size_t i = g.index(a), j = g.index(b);
    g.edge_[i * n + j] = g.edge_[j * n + i] = 1;
  }
  return g;
}

std::size_t ContentionGraph::index(FlowId v) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end()) throw DomainError(fmt::format("vertex {} not in graph", v));
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool ContentionGraph::has_edge(FlowId a, FlowId b) const {
  return edge_[index(a) * size() + index(b)] != 0;
}

bool ContentionGraph::adjacent(FlowId a, FlowId b) const {
  return adjacent_[index(a) * size() + index(b)] != 0;
}

std::optional<double> ContentionGraph::weight(FlowId a, FlowId b) const {
  const double w = weight_[index(a) * size() + index(b)];
  if (std::isnan(w)) return std::nullopt;
  return w;
}

std::vector<FlowId> ContentionGraph::neighbors(FlowId v) const {
  std::vector<FlowId> out;
  const std::size_t i = index(v);
  for (std::size_t j = 0; j < size(); ++j) {
    if (edge_[i * size() + j]) out.push_back(vertices_[j]);
  }
  return out;
}

std::size_t ContentionGraph::degree(FlowId v) const {
  const std::size_t i = index(v);
  return static_cast<std::size_t>(
      std::count(edge_.begin() + static_cast<std::ptrdiff_t>(i * size()),
                 edge_.begin() + static_cast<std::ptrdiff_t>((i + 1) * size()), 1));
}

std::size_t ContentionGraph::edge_count() const {
  return static_cast<std::size_t>(std::count(edge_.begin(), edge_.end(), 1)) / 2;
}

std::vector<std::pair<FlowId, FlowId>> ContentionGraph::edges() const {
  std::vector<std::pair<FlowId, FlowId>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (edge_[i * size() + j]) {
        out.emplace_back(std::min(vertices_[i], vertices_[j]),
                         std::max(vertices_[i], vertices_[j]));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void ContentionGraph::write_edge_list(std::ostream& out) const {
  fmt::print(out, "# contention graph: {} vertices, {} edges, sigma={:.6g}, pt_w={:.6g}\n",
             size(), edge_count(), sigma_, max_power_w_);
  fmt::print(out, "# i j weight_w\n");
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      const std::size_t k = i * size() + j;
      if (adjacent_[k]) {
        fmt::print(out, "{} {} adjacent\n", vertices_[i], vertices_[j]);
      } else if (std::isnan(weight_[k])) {
        fmt::print(out, "{} {} {}\n", vertices_[i], vertices_[j], edge_[k] ? "edge" : "none");
      } else {
        fmt::print(out, "{} {} {:.17g}\n", vertices_[i], vertices_[j], weight_[k]);
      }
    }
  }
}

ContentionGraph build_graph(const Scenario& scenario, const SystemParams& params) {
  if (scenario.flows.empty()) throw DomainError("contention graph needs at least one flow");
  ContentionGraph g;
  const std::size_t n = scenario.flows.size();
  g.vertices_.reserve(n);
  for (const auto& f : scenario.flows) g.vertices_.push_back(f.id);
  g.edge_.assign(n * n, 0);
  g.adjacent_.assign(n * n, 0);
  g.weight_.assign(n * n, std::numeric_limits<double>::quiet_NaN());
  g.sigma_ = params.sigma;
  g.max_power_w_ = params.max_power_w;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Flow& a = scenario.flows[i];
      const Flow& b = scenario.flows[j];
      bool edge = false;
      if (are_adjacent(a, b)) {
        g.adjacent_[i * n + j] = g.adjacent_[j * n + i] = 1;
        edge = true;
      } else {
        const double w = pair_weight(a, b, scenario, params);
        g.weight_[i * n + j] = g.weight_[j * n + i] = w;
        edge = !(w / params.max_power_w < params.sigma);
      }
      g.edge_[i * n + j] = g.edge_[j * n + i] = edge ? 1 : 0;
    }
  }
  return g;
}

}  // namespace mmbh
