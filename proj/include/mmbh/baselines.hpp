#pragma once

// Serial TDMA and fixed-power concurrent (CTFP) reference schemes, plus the
// end-to-end pipeline for the proposed scheme.

#include <string>
#include <vector>

#include "mmbh/contention.hpp"
#include "mmbh/power_control.hpp"

namespace mmbh {

// What the concurrent schemes must deliver to each flow.
//  tdma_throughput: the superframe is shared out in full under TDMA (leftover
//    CTAs go to flows in proportion to their real-valued needs) and every
//    scheme must match the TDMA-delivered throughput R_i delta_i / M.
//  demand: TDMA takes ceil(q M / R) CTAs per flow, leftovers stay idle, and
//    every scheme must deliver the requested q_i.
enum class ReferenceMode { tdma_throughput, demand };

std::string to_string(ReferenceMode m);
ReferenceMode reference_from_string(const std::string& s);

struct TdmaPlan {
  ReferenceMode mode = ReferenceMode::tdma_throughput;
  std::vector<FlowId> flows;       // scenario order
  std::vector<double> rate_bps;    // interference-free rate at Pt
  std::vector<int> required;       // ceil(q M / R)
  std::vector<int> ctas;           // delta_i actually allocated
  std::vector<double> target_bps;  // throughput every scheme must reach

  int total_ctas() const;
  int ctas_of(FlowId flow) const;
};

// Throws InfeasibleDemandError when one flow alone exceeds M and
// InfeasibleScenarioError (listing every flow) when the sum does.
TdmaPlan plan_tdma(const Scenario& scenario, const SystemParams& params,
                   ReferenceMode mode = ReferenceMode::tdma_throughput);

// Copy of `scenario` with each demand replaced by the plan's target.
Scenario served_scenario(const Scenario& scenario, const TdmaPlan& plan);

// One singleton pairing per flow at Pt, in scenario order.
Schedule tdma_schedule(const TdmaPlan& plan, const SystemParams& params);
Schedule tdma_schedule(const Scenario& scenario, const SystemParams& params,
                       ReferenceMode mode = ReferenceMode::tdma_throughput);

// Graph, greedy pairings and power control on a scenario whose demands are
// already the targets.
Schedule proposed_schedule(const Scenario& served, const SystemParams& params);
Schedule proposed_schedule(const Scenario& served, const ContentionGraph& graph,
                           const LinkTable& links);

// Skeleton (pairings and CTA counts) of `proposed` with every power at Pt.
Schedule ctfp_schedule(const Schedule& proposed);
Schedule ctfp_schedule(const Scenario& served, const SystemParams& params,
                       const ContentionGraph& graph);

// The three schemes on one scenario, sharing one plan and one graph.
struct SchemeSet {
  TdmaPlan plan;
  Scenario served;
  ContentionGraph graph;
  Schedule tdma;
  Schedule proposed;
  Schedule ctfp;
};

SchemeSet run_schemes(const Scenario& scenario, const SystemParams& params,
                      ReferenceMode mode = ReferenceMode::tdma_throughput);

}  // namespace mmbh
