#pragma once

// Energy, throughput and efficiency of a finished schedule, and the
// closed-form per-flow quantities used to reason about when concurrency pays.

#include <limits>
#include <string>
#include <vector>

#include "mmbh/baselines.hpp"
#include "mmbh/power_control.hpp"

namespace mmbh {

struct FlowReport {
  FlowId flow = 0;
  double rate_bps = 0.0;        // SINR rate at the schedule's actual powers
  double throughput_bps = 0.0;  // rate * theta / M
  double demand_bps = 0.0;
  double power_w = 0.0;
  double energy_j = 0.0;
  int ctas = 0;
  bool shortfall = false;
};

struct MetricsReport {
  std::string scheme;
  double total_energy_j = 0.0;         // per superframe
  double network_throughput_bps = 0.0;
  double energy_efficiency = 0.0;      // bit/s/J
  std::vector<FlowReport> per_flow;    // schedule flow order
  std::size_t shortfall_count = 0;
};

struct RatioReport {
  std::string baseline;
  double energy_ratio = 0.0;
  double throughput_ratio = 0.0;
};

MetricsReport evaluate(const Schedule& schedule, const LinkTable& links);
MetricsReport evaluate(const Schedule& schedule, const Scenario& scenario,
                       const SystemParams& params);

RatioReport compare(const MetricsReport& scheme, const MetricsReport& baseline);

// Upper bound r_i^u on a flow's energy ratio against TDMA when every
// co-pairing interferer sits below the threshold:
// (2^(q M / (eta W theta)) - 1) theta (N0 W + (|V^k| - 1) sigma Pt) / (Pr(i,i) delta_i),
// with Pr(i,i) the received power at Pt.
double energy_ratio_bound(double demand_bps, int pairing_size, int theta, int tdma_ctas,
                          double signal_power_w, const SystemParams& params);

// Largest integer theta strictly below q M ln2 / (eta W).
long long theta_condition(double demand_bps, const SystemParams& params);

// Threshold below which flow i spends less energy than under TDMA.
// +infinity for singleton pairings.
double sigma_alpha(double demand_bps, int pairing_size, int theta, int tdma_ctas,
                   double signal_power_w, const SystemParams& params);

inline constexpr double kUnboundedSigma = std::numeric_limits<double>::infinity();

struct FlowAnalysis {
  FlowId flow = 0;
  int pairing_size = 0;
  int theta = 0;
  int tdma_ctas = 0;
  double energy_ratio = 0.0;  // realised P_i theta / (Pt delta_i)
  double ratio_bound = 0.0;   // r_i^u
  double alpha = 0.0;
};

// Per-flow analysis of a proposed-scheme schedule against its TDMA plan.
std::vector<FlowAnalysis> analyse(const Schedule& schedule, const TdmaPlan& plan,
                                  const LinkTable& links);

// min over flows of alpha_i; kUnboundedSigma when every pairing is a singleton.
double sigma_bound(const Schedule& schedule, const TdmaPlan& plan, const LinkTable& links);

}  // namespace mmbh
