#include "mmbh/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "mmbh/error.hpp"
#include "mmbh/units.hpp"

namespace mmbh {

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double angle_between(Vec2 origin, Vec2 a, Vec2 b) {
  const double ux = a.x - origin.x, uy = a.y - origin.y;
  const double vx = b.x - origin.x, vy = b.y - origin.y;
  if ((ux == 0.0 && uy == 0.0) || (vx == 0.0 && vy == 0.0)) {
    throw DegenerateGeometryError(fmt::format(
        "undefined direction: node at ({}, {}) coincides with a peer", origin.x, origin.y));
  }
  // atan2 of cross and dot is accurate near 0 and 180 degrees, unlike acos.
  const double cross = ux * vy - uy * vx;
  const double dot = ux * vx + uy * vy;
  return radians_to_degrees(std::atan2(std::abs(cross), dot));
}

double friis_k0(double wavelength_m) {
  const double r = wavelength_m / (4.0 * kPi);
  return r * r;
}

SystemParams SystemParams::defaults() {
  SystemParams p;
  p.bandwidth_hz = 2160e6;
  p.noise_psd_w_per_hz = dbm_per_mhz_to_watts_per_hz(-134.0);
  p.pathloss_exponent = 2.0;
  p.max_power_w = dbm_to_watts(40.0);
  p.mui_factor = 0.01;
  p.cta_duration_s = 18e-6;
  p.cta_count = 5000;
  p.beamwidth_3db_deg = 30.0;
  p.sigma = 1e-10;
  p.efficiency = 0.5;
  p.carrier_wavelength_m = kSpeedOfLight / 60e9;
  p.k0 = kDefaultK0;
  return p;
}

void SystemParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(fmt::format("{} must be positive and finite, got {}", name, v));
    }
  };
  positive(bandwidth_hz, "bandwidth_hz");
  positive(noise_psd_w_per_hz, "noise_psd_w_per_hz");
  positive(pathloss_exponent, "pathloss_exponent");
  positive(max_power_w, "max_power_w");
  positive(cta_duration_s, "cta_duration_s");
  positive(carrier_wavelength_m, "carrier_wavelength_m");
  positive(k0, "k0");
  if (cta_count < 1) {
    throw DomainError(fmt::format("cta_count must be >= 1, got {}", cta_count));
  }
  if (!(beamwidth_3db_deg > 0.0 && beamwidth_3db_deg < 180.0)) {
    throw DomainError(
        fmt::format("beamwidth_3db_deg must lie in (0, 180), got {}", beamwidth_3db_deg));
  }
  if (!(sigma >= 0.0)) {
    throw DomainError(fmt::format("sigma must be >= 0, got {}", sigma));
  }
  if (!(efficiency > 0.0 && efficiency < 1.0)) {
    throw DomainError(fmt::format("efficiency must lie in (0, 1), got {}", efficiency));
  }
  if (!(mui_factor >= 0.0 && mui_factor <= 1.0)) {
    throw DomainError(fmt::format("mui_factor must lie in [0, 1], got {}", mui_factor));
  }
}

bool are_adjacent(const Flow& a, const Flow& b) {
  return a.sender == b.sender || a.sender == b.receiver || a.receiver == b.sender ||
         a.receiver == b.receiver;
}

const Node& Scenario::node(NodeId id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [id](const Node& n) { return n.id == id; });
  if (it == nodes.end()) throw DomainError(fmt::format("unknown node id {}", id));
  return *it;
}

const Flow& Scenario::flow(FlowId id) const {
  auto it = std::find_if(flows.begin(), flows.end(), [id](const Flow& f) { return f.id == id; });
  if (it == flows.end()) throw DomainError(fmt::format("unknown flow id {}", id));
  return *it;
}

void Scenario::validate() const {
  std::set<NodeId> node_ids;
  for (const auto& n : nodes) {
    if (!node_ids.insert(n.id).second) {
      throw DomainError(fmt::format("duplicate node id {}", n.id));
    }
  }
  std::set<FlowId> flow_ids;
  for (const auto& f : flows) {
    if (!flow_ids.insert(f.id).second) {
      throw DomainError(fmt::format("duplicate flow id {}", f.id));
    }
    if (!node_ids.contains(f.sender) || !node_ids.contains(f.receiver)) {
      throw DomainError(fmt::format("flow {} references an unknown node", f.id));
    }
    if (f.sender == f.receiver) {
      throw DomainError(fmt::format("flow {} has sender == receiver", f.id));
    }
    if (!(f.demand_bps > 0.0)) {
      throw DomainError(fmt::format("flow {} demand must be positive", f.id));
    }
  }
}

namespace {

struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void bytes(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  void add(double v) { bytes(std::bit_cast<std::uint64_t>(v)); }
  void add(int v) { bytes(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
};

}  // namespace

std::uint64_t Scenario::hash() const {
  Fnv1a f;
  f.bytes(seed);
  f.add(static_cast<int>(nodes.size()));
  for (const auto& n : nodes) {
    f.add(n.id);
    f.add(n.position.x);
    f.add(n.position.y);
  }
  f.add(static_cast<int>(flows.size()));
  for (const auto& fl : flows) {
    f.add(fl.id);
    f.add(fl.sender);
    f.add(fl.receiver);
    f.add(fl.demand_bps);
  }
  return f.h;
}

AntennaPattern AntennaPattern::from_beamwidth(double beamwidth_3db_deg) {
  if (!(beamwidth_3db_deg > 0.0 && beamwidth_3db_deg < 180.0)) {
    throw DomainError(
        fmt::format("beamwidth must lie in (0, 180) degrees, got {}", beamwidth_3db_deg));
  }
  AntennaPattern p;
  p.beamwidth_3db_deg = beamwidth_3db_deg;
  p.main_lobe_width_deg = 2.6 * beamwidth_3db_deg;
  const double s = 1.6162 / std::sin(degrees_to_radians(beamwidth_3db_deg / 2.0));
  p.peak_gain_db = 10.0 * std::log10(s * s);
  p.side_lobe_gain_db = -0.4111 * std::log(beamwidth_3db_deg) - 10.579;
  return p;
}

double AntennaPattern::peak_gain() const { return db_to_linear(peak_gain_db); }

double AntennaPattern::side_lobe_gain() const { return db_to_linear(side_lobe_gain_db); }

double antenna_gain_db(double offset_deg, const AntennaPattern& pattern) {
  if (!(offset_deg >= 0.0 && offset_deg <= 180.0)) {
    throw DomainError(fmt::format("antenna offset must lie in [0, 180], got {}", offset_deg));
  }
  if (offset_deg <= pattern.main_lobe_width_deg / 2.0) {
    const double u = 2.0 * offset_deg / pattern.beamwidth_3db_deg;
    return pattern.peak_gain_db - 3.01 * u * u;
  }
  return pattern.side_lobe_gain_db;
}

double antenna_gain(double offset_deg, const AntennaPattern& pattern) {
  return db_to_linear(antenna_gain_db(offset_deg, pattern));
}

LinkGains gain_between(const Flow& tx_flow, const Flow& rx_flow, const Scenario& scenario,
                       const AntennaPattern& pattern) {
  if (tx_flow.id == rx_flow.id) {
    const double g = pattern.peak_gain();
    return {g, g};
  }
  const Vec2 s_tx = scenario.position(tx_flow.sender);
  const Vec2 r_tx = scenario.position(tx_flow.receiver);
  const Vec2 s_rx = scenario.position(rx_flow.sender);
  const Vec2 r_rx = scenario.position(rx_flow.receiver);
  const double tx_offset = angle_between(s_tx, r_tx, r_rx);
  const double rx_offset = angle_between(r_rx, s_rx, s_tx);
  return {antenna_gain(tx_offset, pattern), antenna_gain(rx_offset, pattern)};
}

double received_power(double tx_power_w, double gt, double gr, double distance_m,
                      const SystemParams& params) {
  if (!(distance_m > 0.0)) {
    throw DomainError(fmt::format("link distance must be positive, got {}", distance_m));
  }
  return params.k0 * gt * gr * std::pow(distance_m, -params.pathloss_exponent) * tx_power_w;
}

double signal_power(const Flow& flow, double tx_power_w, const Scenario& scenario,
                    const SystemParams& params) {
  const double g = AntennaPattern::from_beamwidth(params.beamwidth_3db_deg).peak_gain();
  const double d = distance(scenario.position(flow.sender), scenario.position(flow.receiver));
  if (!(d > 0.0)) {
    throw DegenerateGeometryError(fmt::format("flow {} endpoints coincide", flow.id));
  }
  return received_power(tx_power_w, g, g, d, params);
}

double interference_power(const Flow& interferer, const Flow& victim, double tx_power_w,
                          const Scenario& scenario, const SystemParams& params) {
  const auto pattern = AntennaPattern::from_beamwidth(params.beamwidth_3db_deg);
  const LinkGains g = gain_between(interferer, victim, scenario, pattern);
  const double d =
      distance(scenario.position(interferer.sender), scenario.position(victim.receiver));
  if (!(d > 0.0)) {
    throw DegenerateGeometryError(fmt::format(
        "sender of flow {} coincides with receiver of flow {}", interferer.id, victim.id));
  }
  return params.mui_factor * received_power(tx_power_w, g.tx, g.rx, d, params);
}

double shannon_rate(double signal_w, double interference_w, const SystemParams& params) {
  if (signal_w < 0.0 || interference_w < 0.0) {
    throw DomainError("signal and interference powers must be non-negative");
  }
  return params.efficiency * params.bandwidth_hz *
         std::log2(1.0 + signal_w / (params.noise_power_w() + interference_w));
}

double tdma_rate(const Flow& flow, const Scenario& scenario, const SystemParams& params) {
  return shannon_rate(signal_power(flow, params.max_power_w, scenario, params), 0.0, params);
}

int tdma_ctas(const Flow& flow, const Scenario& scenario, const SystemParams& params) {
  const double rate = tdma_rate(flow, scenario, params);
  if (!(rate > 0.0)) {
    throw InfeasibleDemandError(flow.id, fmt::format("flow {} has zero TDMA rate", flow.id));
  }
  const long long ctas = detail::tolerant_ceil(flow.demand_bps * params.cta_count / rate);
  if (ctas > params.cta_count) {
    throw InfeasibleDemandError(
        flow.id, fmt::format("flow {} needs {} CTAs under TDMA but the superframe has {}",
                             flow.id, ctas, params.cta_count));
  }
  return static_cast<int>(std::max(ctas, 1LL));
}

namespace detail {

long long tolerant_ceil(double x) {
  return static_cast<long long>(std::ceil(x - std::abs(x) * kRoundTol));
}

long long tolerant_floor(double x) {
  return static_cast<long long>(std::floor(x + std::abs(x) * kRoundTol));
}

}  // namespace detail

}  // namespace mmbh

namespace mmbh {

LinkTable::LinkTable(const Scenario& scenario, const SystemParams& params) : params_(params) {
  const std::size_t n = scenario.flows.size();
  ids_.reserve(n);
  for (const auto& f : scenario.flows) ids_.push_back(f.id);
  signal_.resize(n);
  coupling_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    signal_[i] = signal_power(scenario.flows[i], 1.0, scenario, params);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      try {
        coupling_[j * n + i] =
            interference_power(scenario.flows[j], scenario.flows[i], 1.0, scenario, params);
      } catch (const DegenerateGeometryError&) {
        coupling_[j * n + i] = std::numeric_limits<double>::quiet_NaN();
      }
    }
  }
}

std::size_t LinkTable::index(FlowId id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) throw DomainError(fmt::format("unknown flow id {}", id));
  return static_cast<std::size_t>(it - ids_.begin());
}

double LinkTable::signal_gain(FlowId flow) const { return signal_[index(flow)]; }

double LinkTable::coupling(FlowId interferer, FlowId victim) const {
  if (interferer == victim) return 0.0;
  const double c = coupling_[index(interferer) * ids_.size() + index(victim)];
  if (std::isnan(c)) {
    throw DegenerateGeometryError(fmt::format(
        "flow {} transmits from the receiver of flow {}", interferer, victim));
  }
  return c;
}

double LinkTable::tdma_rate(FlowId flow) const {
  return shannon_rate(signal_gain(flow) * params_.max_power_w, 0.0, params_);
}

double LinkTable::interference(FlowId victim, const std::vector<FlowId>& interferers,
                               double power_each_w) const {
  double sum = 0.0;
  for (FlowId j : interferers) {
    if (j != victim) sum += coupling(j, victim) * power_each_w;
  }
  return sum;
}

}  // namespace mmbh
