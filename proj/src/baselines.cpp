#include "mmbh/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mmbh/error.hpp"
#include "mmbh/scheduler.hpp"

namespace mmbh {

std::string to_string(ReferenceMode m) {
  return m == ReferenceMode::demand ? "demand" : "tdma-throughput";
}

ReferenceMode reference_from_string(const std::string& s) {
  if (s == "demand") return ReferenceMode::demand;
  if (s == "tdma-throughput" || s == "tdma_throughput") return ReferenceMode::tdma_throughput;
  throw DomainError(fmt::format("unknown reference mode '{}'", s));
}

int TdmaPlan::total_ctas() const { return std::accumulate(ctas.begin(), ctas.end(), 0); }

int TdmaPlan::ctas_of(FlowId flow) const {
  for (std::size_t i = 0; i < flows.size(); ++i) {
    if (flows[i] == flow) return ctas[i];
  }
  throw DomainError(fmt::format("flow {} not in TDMA plan", flow));
}

TdmaPlan plan_tdma(const Scenario& scenario, const SystemParams& params, ReferenceMode mode) {
  const int m = params.cta_count;
  TdmaPlan plan;
  plan.mode = mode;
  std::vector<double> exact;
  for (const auto& f : scenario.flows) {
    const double r = tdma_rate(f, scenario, params);
    plan.flows.push_back(f.id);
    plan.rate_bps.push_back(r);
    plan.required.push_back(tdma_ctas(f, scenario, params));
    exact.push_back(f.demand_bps * m / r);
  }
  const long long sum = std::accumulate(plan.required.begin(), plan.required.end(), 0LL);
  if (sum > m) {
    throw InfeasibleScenarioError(
        plan.flows, fmt::format("serial TDMA needs {} CTAs, superframe has {} (flows {})", sum, m,
                                plan.flows));
  }
  plan.ctas = plan.required;
  if (mode == ReferenceMode::tdma_throughput && !plan.ctas.empty()) {
    const long long left = m - sum;
    const double total = std::accumulate(exact.begin(), exact.end(), 0.0);
    long long given = 0;
    for (std::size_t i = 0; i + 1 < plan.ctas.size(); ++i) {
      const long long extra = detail::tolerant_floor(static_cast<double>(left) * exact[i] / total);
      plan.ctas[i] += static_cast<int>(extra);
      given += extra;
    }
    plan.ctas.back() += static_cast<int>(left - given);
  }
  for (std::size_t i = 0; i < plan.flows.size(); ++i) {
    plan.target_bps.push_back(mode == ReferenceMode::demand
                                  ? scenario.flows[i].demand_bps
                                  : plan.rate_bps[i] * plan.ctas[i] / m);
  }
  return plan;
}

Scenario served_scenario(const Scenario& scenario, const TdmaPlan& plan) {
  Scenario out = scenario;
  for (std::size_t i = 0; i < out.flows.size(); ++i) {
    if (out.flows[i].id != plan.flows.at(i)) throw DomainError("TDMA plan does not match scenario");
    out.flows[i].demand_bps = plan.target_bps[i];
  }
  return out;
}

Schedule tdma_schedule(const TdmaPlan& plan, const SystemParams& params) {
  Schedule s;
  s.scheme = Scheme::tdma;
  s.params = params;
  for (std::size_t i = 0; i < plan.flows.size(); ++i) {
    Pairing p;
    p.index = static_cast<int>(i) + 1;
    p.flows = {plan.flows[i]};
    p.ctas = plan.ctas[i];
    p.power[plan.flows[i]] = params.max_power_w;
    s.pairings.push_back(std::move(p));

    FlowControl fc;
    fc.flow = plan.flows[i];
    fc.pairing = static_cast<int>(i) + 1;
    fc.demand_bps = plan.target_bps[i];
    fc.rate_no_control = plan.rate_bps[i];
    fc.ctas_needed = fc.demand_bps * params.cta_count / plan.rate_bps[i];
    fc.assumed_rate = plan.rate_bps[i];
    fc.unclamped_power = params.max_power_w;
    fc.power = params.max_power_w;
    s.flows.push_back(fc);
  }
  return s;
}

Schedule tdma_schedule(const Scenario& scenario, const SystemParams& params, ReferenceMode mode) {
  return tdma_schedule(plan_tdma(scenario, params, mode), params);
}

Schedule proposed_schedule(const Scenario& served, const ContentionGraph& graph,
                           const LinkTable& links) {
  Schedule s = run_power_control(schedule(graph), served, links);
  s.scheme = Scheme::proposed;
  return s;
}

Schedule proposed_schedule(const Scenario& served, const SystemParams& params) {
  return proposed_schedule(served, build_graph(served, params), LinkTable(served, params));
}

Schedule ctfp_schedule(const Schedule& proposed) {
  Schedule s = proposed;
  s.scheme = Scheme::ctfp;
  const double pt = s.params.max_power_w;
  for (auto& p : s.pairings) {
    for (auto& [flow, power] : p.power) power = pt;
  }
  const int m = s.params.cta_count;
  for (auto& fc : s.flows) {
    // At full power everywhere the rate is exactly R', so the flow falls
    // short only when its pairing got fewer CTAs than it needed.
    const int theta = s.ctas_of(fc.flow);
    fc.assumed_rate = fc.rate_no_control;
    fc.unclamped_power = pt;
    fc.power = pt;
    fc.clamped = false;
    fc.shortfall = fc.rate_no_control * theta / m < fc.demand_bps * (1.0 - detail::kRelTol);
  }
  return s;
}

Schedule ctfp_schedule(const Scenario& served, const SystemParams& params,
                       const ContentionGraph& graph) {
  return ctfp_schedule(proposed_schedule(served, graph, LinkTable(served, params)));
}

SchemeSet run_schemes(const Scenario& scenario, const SystemParams& params, ReferenceMode mode) {
  SchemeSet out;
  out.plan = plan_tdma(scenario, params, mode);
  out.served = served_scenario(scenario, out.plan);
  out.graph = build_graph(out.served, params);
  const LinkTable links(out.served, params);
  out.tdma = tdma_schedule(out.plan, params);
  out.proposed = proposed_schedule(out.served, out.graph, links);
  out.ctfp = ctfp_schedule(out.proposed);
  return out;
}

}  // namespace mmbh
