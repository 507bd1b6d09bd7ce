#pragma once

// Experiment configuration: a flat "key = value" text file, '#' starts a
// comment. Radio quantities are given in the units used by the simulation
// parameter table (MHz, dBm, dBm/MHz, us, degrees) and converted once here.
//
//   bandwidth_mhz       2160          noise_dbm_per_mhz  -134
//   pathloss_exponent   2             max_power_dbm      40
//   mui_factor          0.01          cta_duration_us    18
//   cta_count           5000          beamwidth_3db_deg  30
//   sigma               1e-10         efficiency         0.5
//   carrier_ghz         60            k0                 2.5e-4 | friis
//   area_side_m         100           node_count         10
//   traffic_mode        A | B         load_level         1..5 (mode A)
//   flow_count          10 (6..10 in mode B)
//   schemes             proposed,tdma,ctfp
//   sweep               sigma:1e-12,1e-11   (sigma | load | area_side | max_power_dbm | flow_count)
//   trials              50            base_seed          1
//   reference           tdma-throughput | demand

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mmbh/baselines.hpp"
#include "mmbh/model.hpp"
#include "mmbh/power_control.hpp"

namespace mmbh {

enum class TrafficMode { A, B };

enum class SweepVar { none, sigma, load, area_side, max_power_dbm, flow_count };

std::string to_string(SweepVar v);
SweepVar sweep_var_from_string(const std::string& s);

struct Sweep {
  SweepVar var = SweepVar::none;
  std::vector<double> values;
};

struct ExperimentConfig {
  SystemParams params = SystemParams::defaults();
  double area_side_m = 100.0;
  int node_count = 10;
  TrafficMode traffic = TrafficMode::A;
  int load_level = 5;
  int flow_count = 10;
  std::vector<Scheme> schemes{Scheme::proposed, Scheme::tdma, Scheme::ctfp};
  Sweep sweep;
  int trials = 50;
  std::uint64_t base_seed = 1;
  ReferenceMode reference = ReferenceMode::tdma_throughput;

  // Throws ConfigError.
  void validate() const;

  // Demand interval in bit/s for the configured traffic mode and load.
  std::pair<double, double> demand_interval() const;

  // Copy with one sweep value applied.
  ExperimentConfig at(SweepVar var, double value) const;
};

// Parse a configuration, starting from the defaults. Unknown keys, malformed
// numbers and out-of-range values raise ConfigError naming the line.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

// "sigma:1e-12,1e-11" style sweep specification.
Sweep parse_sweep(const std::string& text);

std::vector<Scheme> parse_schemes(const std::string& text);

// Config text that parses back to an equal configuration.
std::string to_text(const ExperimentConfig& cfg);

}  // namespace mmbh
