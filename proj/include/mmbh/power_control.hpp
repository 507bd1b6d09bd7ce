#pragma once

// CTA apportioning and per-flow power for a given set of pairings.
//
// Pass one sizes each pairing by the CTAs its slowest member would need at
// full power (co-flows also at full power). Pass two splits the superframe in
// proportion to those sizes and lowers each flow's power to the least that
// still meets its demand within the CTAs it actually got.

#include <optional>
#include <string>
#include <vector>

#include "mmbh/model.hpp"
#include "mmbh/scheduler.hpp"

namespace mmbh {

enum class Scheme { proposed, tdma, ctfp, oracle };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

// Per-flow working values kept for reports and debugging.
struct FlowControl {
  FlowId flow = 0;
  int pairing = 0;              // Pairing::index
  double demand_bps = 0.0;      // throughput the flow must reach
  double rate_no_control = 0.0; // R' (full power everywhere)
  double ctas_needed = 0.0;     // T_i
  double assumed_rate = 0.0;    // R'' = q M / theta
  double unclamped_power = 0.0; // watts, may exceed Pt
  double power = 0.0;           // watts, <= Pt
  bool clamped = false;         // unclamped_power > Pt
  bool shortfall = false;       // flow is not guaranteed its demand
};

struct Schedule {
  Scheme scheme = Scheme::proposed;
  std::vector<Pairing> pairings;
  SystemParams params;
  std::vector<FlowControl> flows;  // scenario flow order

  int total_ctas() const;
  const Pairing& pairing_of(FlowId flow) const;
  double power_of(FlowId flow) const;
  int ctas_of(FlowId flow) const;
  const FlowControl* control(FlowId flow) const;
  std::size_t shortfall_count() const;
};

// R'_i: own power Pt, every other member of `pairing` interfering at Pt.
double rate_no_control(FlowId flow, const std::vector<FlowId>& pairing, const LinkTable& links);

// T_i = q M / R'. Throws StarvedFlowError when R' is zero.
double ctas_needed(FlowId flow, int pairing_index, double demand_bps, double rate_no_control,
                   int cta_count);

// Floor of T_k M / sum(T) for every pairing but the last, which takes the
// remainder. Throws DegeneratePairingError when a pairing ends with zero CTAs.
std::vector<int> apportion_ctas(const std::vector<double>& needed, int cta_count);

struct PowerChoice {
  double assumed_rate = 0.0;
  double unclamped_power = 0.0;
  double power = 0.0;
  bool clamped = false;
};

// Least power meeting demand_bps over `ctas` CTAs when every other member of
// `pairing` transmits at Pt, clamped to Pt. Values within kRelTol of Pt are
// not treated as clamped.
PowerChoice flow_power(FlowId flow, const std::vector<FlowId>& pairing, int ctas,
                       double demand_bps, const LinkTable& links);

// Fills ctas and power of every pairing. Demands are read from `scenario`.
Schedule run_power_control(std::vector<Pairing> pairings, const Scenario& scenario,
                           const LinkTable& links);
Schedule run_power_control(std::vector<Pairing> pairings, const Scenario& scenario,
                           const SystemParams& params);

}  // namespace mmbh
