#include "mmbh/power_control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "mmbh/error.hpp"

namespace mmbh {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::proposed: return "proposed";
    case Scheme::tdma: return "tdma";
    case Scheme::ctfp: return "ctfp";
    case Scheme::oracle: return "oracle";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "proposed") return Scheme::proposed;
  if (s == "tdma") return Scheme::tdma;
  if (s == "ctfp") return Scheme::ctfp;
  if (s == "oracle") return Scheme::oracle;
  throw DomainError(fmt::format("unknown scheme '{}'", s));
}

int Schedule::total_ctas() const {
  int sum = 0;
  for (const auto& p : pairings) sum += p.ctas;
  return sum;
}

const Pairing& Schedule::pairing_of(FlowId flow) const {
  for (const auto& p : pairings) {
    if (p.contains(flow)) return p;
  }
  throw DomainError(fmt::format("flow {} is not scheduled", flow));
}

double Schedule::power_of(FlowId flow) const { return pairing_of(flow).power.at(flow); }

int Schedule::ctas_of(FlowId flow) const { return pairing_of(flow).ctas; }

const FlowControl* Schedule::control(FlowId flow) const {
  for (const auto& fc : flows) {
    if (fc.flow == flow) return &fc;
  }
  return nullptr;
}

std::size_t Schedule::shortfall_count() const {
  return static_cast<std::size_t>(
      std::count_if(flows.begin(), flows.end(), [](const FlowControl& f) { return f.shortfall; }));
}

double rate_no_control(FlowId flow, const std::vector<FlowId>& pairing, const LinkTable& links) {
  const double pt = links.params().max_power_w;
  return shannon_rate(links.signal_gain(flow) * pt, links.interference(flow, pairing, pt),
                      links.params());
}

double ctas_needed(FlowId flow, int pairing_index, double demand_bps, double rate, int cta_count) {
  if (!(rate > 0.0)) {
    throw StarvedFlowError(flow, pairing_index,
                           fmt::format("flow {} has zero rate at full power in pairing {}", flow,
                                       pairing_index));
  }
  return demand_bps * cta_count / rate;
}

std::vector<int> apportion_ctas(const std::vector<double>& needed, int cta_count) {
  if (needed.empty()) throw DomainError("no pairings to apportion");
  if (cta_count < 1) throw DomainError("superframe needs at least one CTA");
  double total = 0.0;
  for (double t : needed) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("CTA requirements must be positive");
    total += t;
  }
  std::vector<int> theta(needed.size());
  long long used = 0;
  for (std::size_t k = 0; k + 1 < needed.size(); ++k) {
    theta[k] = static_cast<int>(detail::tolerant_floor(needed[k] / total * cta_count));
    used += theta[k];
  }
  theta.back() = static_cast<int>(cta_count - used);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    if (theta[k] < 1) {
      throw DegeneratePairingError(static_cast<int>(k) + 1,
                                   fmt::format("pairing {} received no CTAs", k + 1));
    }
  }
  return theta;
}

PowerChoice flow_power(FlowId flow, const std::vector<FlowId>& pairing, int ctas,
                       double demand_bps, const LinkTable& links) {
  if (ctas < 1) throw DomainError(fmt::format("flow {} given {} CTAs", flow, ctas));
  const SystemParams& p = links.params();
  const double pt = p.max_power_w;
  PowerChoice out;
  out.assumed_rate = demand_bps * p.cta_count / ctas;
  const double spectral = out.assumed_rate / (p.efficiency * p.bandwidth_hz);
  const double floor_w = p.noise_power_w() + links.interference(flow, pairing, pt);
  out.unclamped_power = std::expm1(spectral * std::log(2.0)) * floor_w / links.signal_gain(flow);
  if (out.unclamped_power > pt * (1.0 + detail::kRelTol)) {
    out.power = pt;
    out.clamped = true;
  } else {
    out.power = std::min(out.unclamped_power, pt);
  }
  return out;
}

Schedule run_power_control(std::vector<Pairing> pairings, const Scenario& scenario,
                           const LinkTable& links) {
  if (pairings.empty()) throw DomainError("no pairings to control");
  const int m = links.params().cta_count;
  Schedule s;
  s.params = links.params();

  std::vector<FlowControl> controls;
  std::vector<double> needed;
  for (const auto& pairing : pairings) {
    double tk = 0.0;
    for (FlowId f : pairing.flows) {
      FlowControl fc;
      fc.flow = f;
      fc.pairing = pairing.index;
      fc.demand_bps = scenario.flow(f).demand_bps;
      fc.rate_no_control = rate_no_control(f, pairing.flows, links);
      fc.ctas_needed = ctas_needed(f, pairing.index, fc.demand_bps, fc.rate_no_control, m);
      tk = std::max(tk, fc.ctas_needed);
      controls.push_back(fc);
    }
    needed.push_back(tk);
  }

  const std::vector<int> theta = apportion_ctas(needed, m);
  for (std::size_t k = 0; k < pairings.size(); ++k) {
    Pairing& pairing = pairings[k];
    pairing.ctas = theta[k];
    pairing.power.clear();
    for (auto& fc : controls) {
      if (fc.pairing != pairing.index) continue;
      const PowerChoice pc = flow_power(fc.flow, pairing.flows, pairing.ctas, fc.demand_bps, links);
      fc.assumed_rate = pc.assumed_rate;
      fc.unclamped_power = pc.unclamped_power;
      fc.power = pc.power;
      fc.clamped = pc.clamped;
      fc.shortfall = pc.clamped;
      pairing.power[fc.flow] = pc.power;
    }
  }

  for (const auto& f : scenario.flows) {
    auto it = std::find_if(controls.begin(), controls.end(),
                           [&](const FlowControl& c) { return c.flow == f.id; });
    if (it == controls.end()) {
      throw DomainError(fmt::format("flow {} is missing from the pairings", f.id));
    }
    s.flows.push_back(*it);
  }
  if (s.flows.size() != controls.size()) throw DomainError("pairings contain unknown flows");
  s.pairings = std::move(pairings);
  return s;
}

Schedule run_power_control(std::vector<Pairing> pairings, const Scenario& scenario,
                           const SystemParams& params) {
  return run_power_control(std::move(pairings), scenario, LinkTable(scenario, params));
}

}  // namespace mmbh
