#pragma once

// Physical layer: directional antenna pattern, path loss, SINR and Shannon
// rate for mmWave backhaul links, plus the serial-TDMA CTA demand.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mmbh/units.hpp"

namespace mmbh {

using NodeId = int;
using FlowId = int;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(Vec2 a, Vec2 b);

// Angle in degrees, in [0, 180], between the rays origin->a and origin->b.
double angle_between(Vec2 origin, Vec2 a, Vec2 b);

// Friis coupling constant (lambda / 4 pi)^2.
double friis_k0(double wavelength_m);

// Default k0. The Friis value at 60 GHz (1.58e-7) leaves sidelobe coupling
// across a 100 m cell near 1e-16, so a threshold of 1e-12 would never produce
// a complete contention graph. This value places the weakest coupling of the
// default deployment (sidelobe to sidelobe at 100 m, rho = 0.01) at 1e-12.
inline constexpr double kDefaultK0 = 2.5e-4;

// Radio and superframe constants, linear SI units throughout.
struct SystemParams {
  double bandwidth_hz = 2160e6;
  double noise_psd_w_per_hz = 3.9810717055349565e-23;  // -134 dBm/MHz
  double pathloss_exponent = 2.0;
  double max_power_w = 10.0;        // 40 dBm
  double mui_factor = 0.01;
  double cta_duration_s = 18e-6;
  int cta_count = 5000;
  double beamwidth_3db_deg = 30.0;
  double sigma = 1e-10;
  double efficiency = 0.5;
  double carrier_wavelength_m = kSpeedOfLight / 60e9;
  double k0 = kDefaultK0;

  // Simulation parameter table: W = 2160 MHz, N0 = -134 dBm/MHz, n = 2,
  // Pt = 40 dBm, rho = 0.01, dT = 18 us, M = 5000, 30 deg beams, sigma = 1e-10.
  static SystemParams defaults();

  double noise_power_w() const { return noise_psd_w_per_hz * bandwidth_hz; }
  double superframe_s() const { return cta_duration_s * cta_count; }

  // Throws DomainError naming the first offending field.
  void validate() const;
};

struct Node {
  NodeId id = 0;
  Vec2 position;
};

struct Flow {
  FlowId id = 0;
  NodeId sender = 0;
  NodeId receiver = 0;
  double demand_bps = 0.0;
};

// Flows sharing an endpoint in any role cannot be active together.
bool are_adjacent(const Flow& a, const Flow& b);

struct Scenario {
  std::vector<Node> nodes;
  std::vector<Flow> flows;
  std::uint64_t seed = 0;

  const Node& node(NodeId id) const;
  const Flow& flow(FlowId id) const;
  Vec2 position(NodeId id) const { return node(id).position; }

  // Unique ids, known endpoints, sender != receiver, positive demand.
  void validate() const;

  // FNV-1a over the exact bit patterns of every field.
  std::uint64_t hash() const;
};

// Gaussian main lobe with a flat side-lobe floor.
struct AntennaPattern {
  double beamwidth_3db_deg = 30.0;
  double main_lobe_width_deg = 78.0;
  double peak_gain_db = 0.0;
  double side_lobe_gain_db = 0.0;

  static AntennaPattern from_beamwidth(double beamwidth_3db_deg);

  double peak_gain() const;
  double side_lobe_gain() const;
};

// Gain in dB at offset_deg from boresight. Throws DomainError outside [0, 180].
double antenna_gain_db(double offset_deg, const AntennaPattern& pattern);

// Linear gain at offset_deg from boresight.
double antenna_gain(double offset_deg, const AntennaPattern& pattern);

struct LinkGains {
  double tx = 0.0;
  double rx = 0.0;
};

// Gains on the path from tx_flow's sender to rx_flow's receiver: the sender
// gain relative to its boresight (its own receiver) and the receiver gain
// relative to its boresight (its own sender). Equal flows give peak gains.
// Throws DegenerateGeometryError when a direction is undefined.
LinkGains gain_between(const Flow& tx_flow, const Flow& rx_flow, const Scenario& scenario,
                       const AntennaPattern& pattern);

// k0 * gt * gr * d^-n * tx_power. Throws DomainError for d <= 0.
double received_power(double tx_power_w, double gt, double gr, double distance_m,
                      const SystemParams& params);

// Desired-signal power at rx of `flow` when its sender uses tx_power_w.
double signal_power(const Flow& flow, double tx_power_w, const Scenario& scenario,
                    const SystemParams& params);

// Interference at the receiver of `victim` from the sender of `interferer`,
// MUI factor included.
double interference_power(const Flow& interferer, const Flow& victim, double tx_power_w,
                          const Scenario& scenario, const SystemParams& params);

// eta * W * log2(1 + signal / (N0 W + interference)).
double shannon_rate(double signal_w, double interference_w, const SystemParams& params);

// Interference-free rate at full power.
double tdma_rate(const Flow& flow, const Scenario& scenario, const SystemParams& params);

// CTAs the flow needs under serial TDMA: ceil(q M / R).
// Throws InfeasibleDemandError when that exceeds M.
int tdma_ctas(const Flow& flow, const Scenario& scenario, const SystemParams& params);

// Per-watt link coefficients for every ordered flow pair of a scenario,
// evaluated once so that schedulers and solvers do not redo the geometry.
class LinkTable {
 public:
  LinkTable(const Scenario& scenario, const SystemParams& params);

  std::size_t size() const { return ids_.size(); }
  const std::vector<FlowId>& flow_ids() const { return ids_; }
  std::size_t index(FlowId id) const;

  // Received desired power per watt transmitted, peak gains on both ends.
  double signal_gain(FlowId flow) const;
  // Interference at the receiver of `victim` per watt sent by `interferer`,
  // MUI factor included. Throws DegenerateGeometryError for pairs whose
  // geometry is undefined (the interferer transmits from the victim receiver).
  double coupling(FlowId interferer, FlowId victim) const;

  // Interference-free rate at full power.
  double tdma_rate(FlowId flow) const;
  // Sum of coupling * power over `interferers`, skipping `victim` itself.
  double interference(FlowId victim, const std::vector<FlowId>& interferers,
                      double power_each_w) const;

  const SystemParams& params() const { return params_; }

 private:
  SystemParams params_;
  std::vector<FlowId> ids_;
  std::vector<double> signal_;
  std::vector<double> coupling_;  // row = interferer, column = victim
};

namespace detail {
// Rounding with a relative guard band against representation error, so that
// mathematically integral quotients do not round the wrong way.
long long tolerant_ceil(double x);
long long tolerant_floor(double x);
inline constexpr double kRoundTol = 1e-12;
// Relative slack for "achieved >= required" style comparisons.
inline constexpr double kRelTol = 1e-9;
}  // namespace detail

}  // namespace mmbh
