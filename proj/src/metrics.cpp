#include "mmbh/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mmbh/error.hpp"

namespace mmbh {

MetricsReport evaluate(const Schedule& schedule, const LinkTable& links) {
  const SystemParams& p = schedule.params;
  MetricsReport r;
  r.scheme = to_string(schedule.scheme);
  for (const auto& pairing : schedule.pairings) {
    for (FlowId f : pairing.flows) {
      FlowReport fr;
      fr.flow = f;
      fr.ctas = pairing.ctas;
      fr.power_w = pairing.power.at(f);
      double interference = 0.0;
      for (FlowId j : pairing.flows) {
        if (j != f) interference += links.coupling(j, f) * pairing.power.at(j);
      }
      fr.rate_bps = shannon_rate(links.signal_gain(f) * fr.power_w, interference, p);
      fr.throughput_bps = fr.rate_bps * pairing.ctas / p.cta_count;
      fr.energy_j = fr.power_w * pairing.ctas * p.cta_duration_s;
      if (const FlowControl* fc = schedule.control(f)) {
        fr.demand_bps = fc->demand_bps;
        fr.shortfall = fc->shortfall;
      }
      r.per_flow.push_back(fr);
    }
  }
  // Report in scenario order so that pairing order does not leak into output.
  std::vector<FlowReport> ordered;
  for (const auto& fc : schedule.flows) {
    auto it = std::find_if(r.per_flow.begin(), r.per_flow.end(),
                           [&](const FlowReport& x) { return x.flow == fc.flow; });
    if (it != r.per_flow.end()) ordered.push_back(*it);
  }
  if (ordered.size() == r.per_flow.size()) r.per_flow = std::move(ordered);
  for (const auto& fr : r.per_flow) {
    r.total_energy_j += fr.energy_j;
    r.network_throughput_bps += fr.throughput_bps;
    if (fr.shortfall) ++r.shortfall_count;
  }
  r.energy_efficiency = r.total_energy_j > 0.0 ? r.network_throughput_bps / r.total_energy_j : 0.0;
  return r;
}

MetricsReport evaluate(const Schedule& schedule, const Scenario& scenario,
                       const SystemParams& params) {
  return evaluate(schedule, LinkTable(scenario, params));
}

RatioReport compare(const MetricsReport& scheme, const MetricsReport& baseline) {
  if (!(baseline.total_energy_j > 0.0) || !(baseline.network_throughput_bps > 0.0)) {
    throw DomainError(fmt::format("baseline '{}' has zero energy or throughput", baseline.scheme));
  }
  return RatioReport{baseline.scheme, scheme.total_energy_j / baseline.total_energy_j,
                     scheme.network_throughput_bps / baseline.network_throughput_bps};
}

namespace {
double growth(double demand_bps, int theta, const SystemParams& p) {
  return std::expm1(demand_bps * p.cta_count / (p.efficiency * p.bandwidth_hz * theta) *
                    std::log(2.0));
}

void require_positive(int theta, int tdma_ctas, int pairing_size) {
  if (theta < 1 || tdma_ctas < 1 || pairing_size < 1) {
    throw DomainError("theta, TDMA CTAs and pairing size must be positive");
  }
}
}  // namespace

double energy_ratio_bound(double demand_bps, int pairing_size, int theta, int tdma_ctas,
                          double signal_power_w, const SystemParams& p) {
  require_positive(theta, tdma_ctas, pairing_size);
  const double floor_w = p.noise_power_w() + (pairing_size - 1) * p.sigma * p.max_power_w;
  return growth(demand_bps, theta, p) * theta * floor_w / (signal_power_w * tdma_ctas);
}

long long theta_condition(double demand_bps, const SystemParams& p) {
  if (!(demand_bps > 0.0)) throw DomainError("demand must be positive");
  const double x = demand_bps * p.cta_count * std::log(2.0) / (p.efficiency * p.bandwidth_hz);
  const double n = std::floor(x);
  return static_cast<long long>(n == x ? n - 1 : n);
}

double sigma_alpha(double demand_bps, int pairing_size, int theta, int tdma_ctas,
                   double signal_power_w, const SystemParams& p) {
  require_positive(theta, tdma_ctas, pairing_size);
  if (pairing_size == 1) return kUnboundedSigma;
  const double others = p.max_power_w * (pairing_size - 1);
  return signal_power_w * tdma_ctas / (growth(demand_bps, theta, p) * theta * others) -
         p.noise_power_w() / others;
}

std::vector<FlowAnalysis> analyse(const Schedule& schedule, const TdmaPlan& plan,
                                  const LinkTable& links) {
  const SystemParams& p = schedule.params;
  std::vector<FlowAnalysis> out;
  for (const auto& fc : schedule.flows) {
    const Pairing& pairing = schedule.pairing_of(fc.flow);
    FlowAnalysis a;
    a.flow = fc.flow;
    a.pairing_size = static_cast<int>(pairing.flows.size());
    a.theta = pairing.ctas;
    a.tdma_ctas = plan.ctas_of(fc.flow);
    const double signal = links.signal_gain(fc.flow) * p.max_power_w;
    a.energy_ratio = pairing.power.at(fc.flow) * a.theta / (p.max_power_w * a.tdma_ctas);
    a.ratio_bound =
        energy_ratio_bound(fc.demand_bps, a.pairing_size, a.theta, a.tdma_ctas, signal, p);
    a.alpha = sigma_alpha(fc.demand_bps, a.pairing_size, a.theta, a.tdma_ctas, signal, p);
    out.push_back(a);
  }
  return out;
}

double sigma_bound(const Schedule& schedule, const TdmaPlan& plan, const LinkTable& links) {
  double best = kUnboundedSigma;
  for (const auto& a : analyse(schedule, plan, links)) best = std::min(best, a.alpha);
  return best;
}

}  // namespace mmbh
