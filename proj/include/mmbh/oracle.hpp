#pragma once

// Brute-force reference for tiny instances: every partition of the flows into
// independent pairings, every CTA split with sum <= M, powers from the same
// per-flow rule the heuristic uses. Also hosts the shared feasibility check.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mmbh/contention.hpp"
#include "mmbh/power_control.hpp"

namespace mmbh {

// Constraints of the scheduling problem.
enum class Constraint {
  one_pairing,   // each flow in exactly one pairing
  superframe,    // sum of theta <= M
  independence,  // no adjacency or above-threshold pair shares a pairing
  throughput,    // achieved throughput >= demand at actual powers
  power,         // power <= Pt
};

std::string to_string(Constraint c);

struct Violation {
  Constraint constraint = Constraint::one_pairing;
  FlowId flow = -1;     // -1 when not tied to one flow
  int pairing = 0;      // 0 when not tied to one pairing
  std::string detail;
};

struct FeasibilityReport {
  bool ok = true;
  std::vector<Violation> violations;

  std::string summary() const;
};

// Demands are read from `served`. Flows flagged with a shortfall fail the throughput constraint
// whatever their measured throughput.
FeasibilityReport check_feasible(const Schedule& schedule, const Scenario& served,
                                 const ContentionGraph& graph, const LinkTable& links);
FeasibilityReport check_feasible(const Schedule& schedule, const Scenario& served,
                                 const SystemParams& params);

struct OracleLimits {
  int max_flows = 5;
  int max_ctas = 24;
};

struct OracleResult {
  bool feasible = false;
  double energy_j = 0.0;
  Schedule schedule;                    // valid when feasible
  std::vector<int> partition;           // restricted growth string of the best
  std::uint64_t partitions = 0;         // all set partitions (Bell number)
  std::uint64_t independent_partitions = 0;
  std::uint64_t candidates = 0;         // (independent partition, theta) pairs
  std::uint64_t feasible_candidates = 0;
  // Candidates rejected per constraint: partitions with a conflicting pair count once,
  // theta vectors missing demand count once each.
  std::uint64_t rejected_independence = 0;
  std::uint64_t rejected_throughput = 0;

  // Human-readable account of why nothing was feasible (or the optimum).
  std::string report() const;
};

// Throws DomainError when the instance exceeds `limits`.
// Ties on energy resolve to the lexicographically smallest partition string,
// then the smallest theta vector.
OracleResult solve_exact(const Scenario& served, const SystemParams& params,
                         OracleLimits limits = {});

}  // namespace mmbh
