#pragma once

// Scenario generation and the trial loop behind the CLI.
//
// Every trial redraws node positions, flow endpoints and demands from Philox
// streams keyed by the base seed and indexed by (trial, purpose, attempt), so
// all schemes and all sweep points of a trial see the same draws.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mmbh/baselines.hpp"
#include "mmbh/config.hpp"
#include "mmbh/metrics.hpp"

namespace mmbh {

inline constexpr int kMaxScenarioDraws = 100;

// Throws ScenarioGenerationError after kMaxScenarioDraws draws that all fail
// the serial TDMA feasibility check.
Scenario generate_scenario(const ExperimentConfig& cfg, std::uint32_t trial);

struct ResultRow {
  SweepVar sweep_var = SweepVar::none;
  double sweep_value = 0.0;
  int trial = -1;  // -1 marks a mean row
  Scheme scheme = Scheme::proposed;
  double energy_j = 0.0;
  double throughput_bps = 0.0;
  double efficiency = 0.0;
  double energy_ratio = 0.0;
  double throughput_ratio = 0.0;
  double shortfall_count = 0.0;  // averaged on mean rows
  std::uint64_t scenario_hash = 0;
};

struct TrialFailure {
  SweepVar sweep_var = SweepVar::none;
  double sweep_value = 0.0;
  int trial = 0;
  std::string reason;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;  // per sweep point: trial rows, then mean rows
  std::vector<TrialFailure> failures;
};

struct TrialOutcome {
  double sweep_value = 0.0;
  int trial = 0;
  Scenario scenario;
  SchemeSet schemes;
};

struct RunOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
  // Called once per successful trial, in canonical order.
  std::function<void(const TrialOutcome&)> on_trial;
  // Called once per failed trial, in canonical order.
  std::function<void(const TrialFailure&)> on_failure;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

// CSV with the column header; `stamp` adds one leading "# ..." line.
void write_csv(std::ostream& out, const ExperimentResult& result,
               const std::optional<std::string>& stamp = std::nullopt);

// Small random instance for property checks and the oracle: flows drawn over
// `node_count` nodes in a square, each demand chosen so that serial TDMA needs
// between 1 and floor(M / flow_count) CTAs.
struct DeskInstanceOptions {
  int flow_count = 4;
  int node_count = 6;
  double area_side_m = 100.0;
};

Scenario desk_instance(const DeskInstanceOptions& opts, const SystemParams& params,
                       std::uint64_t seed, std::uint32_t index);

struct GapRow {
  std::uint32_t instance = 0;
  std::uint64_t seed = 0;
  int flow_count = 0;
  bool oracle_feasible = false;
  bool heuristic_flagged = false;  // any shortfall in the heuristic schedule
  bool heuristic_feasible = false;
  double oracle_energy_j = 0.0;
  double heuristic_energy_j = 0.0;
  double gap_ratio = 0.0;  // heuristic / oracle
};

struct GapOptions {
  int instances = 50;
  int max_flows = 4;
  int node_count = 6;
  double area_side_m = 100.0;
  std::uint64_t seed = 1;
  ReferenceMode reference = ReferenceMode::tdma_throughput;
};

// Heuristic against the exhaustive oracle on desk instances. Instance i has
// 2 + i % (max_flows - 1) flows (one flow when max_flows is 1); M comes from
// `params`.
std::vector<GapRow> run_gap(const GapOptions& opts, const SystemParams& params);
void write_gap_csv(std::ostream& out, const std::vector<GapRow>& rows);

}  // namespace mmbh
