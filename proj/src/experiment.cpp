#include "mmbh/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mmbh/error.hpp"
#include "mmbh/oracle.hpp"
#include "mmbh/rng.hpp"

namespace mmbh {

namespace {

Scenario draw_scenario(const ExperimentConfig& cfg, std::uint32_t trial, std::uint32_t attempt) {
  Scenario sc;
  sc.seed = cfg.base_seed;
  PhiloxStream pos(cfg.base_seed, trial, StreamPurpose::node_positions, attempt);
  for (int i = 0; i < cfg.node_count; ++i) {
    const double x = pos.uniform(0.0, cfg.area_side_m);
    const double y = pos.uniform(0.0, cfg.area_side_m);
    sc.nodes.push_back(Node{i + 1, {x, y}});
  }
  PhiloxStream ends(cfg.base_seed, trial, StreamPurpose::flow_endpoints, attempt);
  std::set<std::pair<NodeId, NodeId>> used;
  const auto n = static_cast<std::uint32_t>(cfg.node_count);
  while (static_cast<int>(sc.flows.size()) < cfg.flow_count) {
    const NodeId s = static_cast<NodeId>(ends.below(n)) + 1;
    const NodeId r = static_cast<NodeId>(ends.below(n)) + 1;
    if (s == r || !used.insert({s, r}).second) continue;
    sc.flows.push_back(Flow{static_cast<FlowId>(sc.flows.size()) + 1, s, r, 0.0});
  }
  PhiloxStream dem(cfg.base_seed, trial, StreamPurpose::demands, attempt);
  const auto [lo, hi] = cfg.demand_interval();
  for (auto& f : sc.flows) f.demand_bps = dem.uniform(lo, hi);
  return sc;
}

// Largest-demand flows whose removal would make serial TDMA fit.
std::vector<int> binding_flows(const Scenario& sc, const SystemParams& params) {
  std::vector<std::pair<long long, FlowId>> need;
  long long total = 0;
  for (const auto& f : sc.flows) {
    const double r = tdma_rate(f, sc, params);
    const long long d = detail::tolerant_ceil(f.demand_bps * params.cta_count / r);
    need.emplace_back(d, f.id);
    total += d;
  }
  std::sort(need.begin(), need.end(), [](auto a, auto b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<int> out;
  for (const auto& [d, id] : need) {
    if (total <= params.cta_count) break;
    out.push_back(id);
    total -= d;
  }
  return out;
}

}  // namespace

Scenario generate_scenario(const ExperimentConfig& cfg, std::uint32_t trial) {
  Scenario last;
  for (std::uint32_t attempt = 0; attempt < kMaxScenarioDraws; ++attempt) {
    last = draw_scenario(cfg, trial, attempt);
    try {
      plan_tdma(last, cfg.params, cfg.reference);
      return last;
    } catch (const InfeasibleDemandError&) {
    } catch (const InfeasibleScenarioError&) {
    } catch (const DegenerateGeometryError&) {
    }
  }
  std::vector<int> binding;
  try {
    binding = binding_flows(last, cfg.params);
  } catch (const Error&) {
  }
  throw ScenarioGenerationError(
      binding, fmt::format("trial {}: {} consecutive draws infeasible under serial TDMA", trial,
                           kMaxScenarioDraws));
}

namespace {

struct Slot {
  std::optional<TrialOutcome> outcome;
  std::optional<TrialFailure> failure;
};

ResultRow make_row(SweepVar var, double value, int trial, Scheme scheme, const MetricsReport& m,
                   const MetricsReport& tdma, std::uint64_t hash) {
  ResultRow r;
  r.sweep_var = var;
  r.sweep_value = value;
  r.trial = trial;
  r.scheme = scheme;
  r.energy_j = m.total_energy_j;
  r.throughput_bps = m.network_throughput_bps;
  r.efficiency = m.energy_efficiency;
  const RatioReport ratio = compare(m, tdma);
  r.energy_ratio = ratio.energy_ratio;
  r.throughput_ratio = ratio.throughput_ratio;
  r.shortfall_count = static_cast<double>(m.shortfall_count);
  r.scenario_hash = hash;
  return r;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  ExperimentResult result;

  std::vector<double> points = cfg.sweep.values;
  const SweepVar var = cfg.sweep.var;
  if (var == SweepVar::none) points = {0.0};

  for (double value : points) {
    const ExperimentConfig point = cfg.at(var, value);
    std::vector<Slot> slots(static_cast<std::size_t>(point.trials));

    std::atomic<int> next{0};
    auto worker = [&] {
      for (int t = next++; t < point.trials; t = next++) {
        Slot& slot = slots[static_cast<std::size_t>(t)];
        try {
          TrialOutcome o;
          o.sweep_value = value;
          o.trial = t;
          o.scenario = generate_scenario(point, static_cast<std::uint32_t>(t));
          o.schemes = run_schemes(o.scenario, point.params, point.reference);
          slot.outcome = std::move(o);
        } catch (const std::exception& e) {
          slot.failure = TrialFailure{var, value, t, e.what()};
        }
      }
    };
    unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : opts.threads;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(point.trials));
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    std::vector<ResultRow> trial_rows;
    for (const Slot& slot : slots) {
      if (slot.failure) {
        result.failures.push_back(*slot.failure);
        if (opts.on_failure) opts.on_failure(*slot.failure);
        continue;
      }
      const TrialOutcome& o = *slot.outcome;
      if (opts.on_trial) opts.on_trial(o);
      const SchemeSet& s = o.schemes;
      const LinkTable links(s.served, point.params);
      const MetricsReport tdma = evaluate(s.tdma, links);
      const std::uint64_t hash = o.scenario.hash();
      for (Scheme scheme : point.schemes) {
        const Schedule& sched = scheme == Scheme::tdma       ? s.tdma
                                : scheme == Scheme::ctfp     ? s.ctfp
                                                             : s.proposed;
        const MetricsReport m = scheme == Scheme::tdma ? tdma : evaluate(sched, links);
        trial_rows.push_back(make_row(var, value, o.trial, scheme, m, tdma, hash));
      }
    }

    for (Scheme scheme : point.schemes) {
      ResultRow mean;
      mean.sweep_var = var;
      mean.sweep_value = value;
      mean.trial = -1;
      mean.scheme = scheme;
      int count = 0;
      for (const auto& r : trial_rows) {
        if (r.scheme != scheme) continue;
        ++count;
        mean.energy_j += r.energy_j;
        mean.throughput_bps += r.throughput_bps;
        mean.efficiency += r.efficiency;
        mean.energy_ratio += r.energy_ratio;
        mean.throughput_ratio += r.throughput_ratio;
        mean.shortfall_count += r.shortfall_count;
      }
      if (count == 0) continue;
      for (double* v : {&mean.energy_j, &mean.throughput_bps, &mean.efficiency,
                        &mean.energy_ratio, &mean.throughput_ratio, &mean.shortfall_count}) {
        *v /= count;
      }
      trial_rows.push_back(mean);
    }
    result.rows.insert(result.rows.end(), trial_rows.begin(), trial_rows.end());
  }
  return result;
}

void write_csv(std::ostream& out, const ExperimentResult& result,
               const std::optional<std::string>& stamp) {
  if (stamp) fmt::print(out, "# {}\n", *stamp);
  fmt::print(out,
             "sweep_var,sweep_value,trial,scheme,energy_J,throughput_bps,efficiency_bps_per_J,"
             "energy_ratio_vs_tdma,throughput_ratio_vs_tdma,shortfall_count,scenario_hash\n");
  for (const auto& r : result.rows) {
    const std::string trial = r.trial < 0 ? "mean" : std::to_string(r.trial);
    const std::string shortfall = r.trial < 0 ? fmt::format("{:.17g}", r.shortfall_count)
                                              : fmt::format("{}", r.shortfall_count);
    const std::string hash = r.trial < 0 ? "" : fmt::format("{:016x}", r.scenario_hash);
    fmt::print(out, "{},{:.17g},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{}\n",
               to_string(r.sweep_var), r.sweep_value, trial, to_string(r.scheme), r.energy_j,
               r.throughput_bps, r.efficiency, r.energy_ratio, r.throughput_ratio, shortfall, hash);
  }
}

Scenario desk_instance(const DeskInstanceOptions& opts, const SystemParams& params,
                       std::uint64_t seed, std::uint32_t index) {
  if (opts.flow_count < 1 || opts.node_count < 2 ||
      opts.flow_count > opts.node_count * (opts.node_count - 1)) {
    throw DomainError("desk instance needs at least one flow and enough node pairs");
  }
  const int per_flow = params.cta_count / opts.flow_count;
  if (per_flow < 1) throw DomainError("desk instance needs M >= flow_count");
  for (std::uint32_t attempt = 0; attempt < kMaxScenarioDraws; ++attempt) {
    PhiloxStream rng(seed, index, StreamPurpose::test_instances, attempt);
    Scenario sc;
    sc.seed = seed;
    for (int i = 0; i < opts.node_count; ++i) {
      const double x = rng.uniform(0.0, opts.area_side_m);
      const double y = rng.uniform(0.0, opts.area_side_m);
      sc.nodes.push_back(Node{i + 1, {x, y}});
    }
    std::set<std::pair<NodeId, NodeId>> used;
    const auto n = static_cast<std::uint32_t>(opts.node_count);
    while (static_cast<int>(sc.flows.size()) < opts.flow_count) {
      const NodeId s = static_cast<NodeId>(rng.below(n)) + 1;
      const NodeId r = static_cast<NodeId>(rng.below(n)) + 1;
      if (s == r || !used.insert({s, r}).second) continue;
      sc.flows.push_back(Flow{static_cast<FlowId>(sc.flows.size()) + 1, s, r, 1.0});
    }
    try {
      for (auto& f : sc.flows) {
        // Real-valued TDMA need in (0, per_flow], so the ceilings always fit.
        const double need = rng.uniform(0.05, 1.0) * per_flow;
        f.demand_bps = tdma_rate(f, sc, params) * need / params.cta_count;
      }
      LinkTable check(sc, params);
      plan_tdma(sc, params, ReferenceMode::demand);
      return sc;
    } catch (const Error&) {
      continue;  // coincident geometry; draw again
    }
  }
  throw ScenarioGenerationError({}, "desk instance: no usable draw");
}

std::vector<GapRow> run_gap(const GapOptions& opts, const SystemParams& params) {
  if (opts.max_flows < 1) throw DomainError("max_flows must be positive");
  std::vector<GapRow> rows;
  for (int i = 0; i < opts.instances; ++i) {
    GapRow row;
    row.instance = static_cast<std::uint32_t>(i);
    row.seed = opts.seed;
    row.flow_count = opts.max_flows == 1 ? 1 : 2 + i % (opts.max_flows - 1);
    const DeskInstanceOptions desk{row.flow_count, opts.node_count, opts.area_side_m};
    const Scenario sc = desk_instance(desk, params, opts.seed, row.instance);
    const SchemeSet s = run_schemes(sc, params, opts.reference);
    const LinkTable links(s.served, params);
    row.heuristic_energy_j = evaluate(s.proposed, links).total_energy_j;
    row.heuristic_flagged = s.proposed.shortfall_count() > 0;
    row.heuristic_feasible = check_feasible(s.proposed, s.served, s.graph, links).ok;
    const OracleResult o = solve_exact(s.served, params, {5, 24});
    row.oracle_feasible = o.feasible;
    if (o.feasible) {
      row.oracle_energy_j = o.energy_j;
      row.gap_ratio = row.heuristic_energy_j / o.energy_j;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_gap_csv(std::ostream& out, const std::vector<GapRow>& rows) {
  fmt::print(out,
             "instance,seed,flow_count,oracle_energy_J,heuristic_energy_J,gap_ratio,"
             "heuristic_flagged,heuristic_feasible,oracle_feasible\n");
  double sum = 0.0;
  int count = 0;
  for (const auto& r : rows) {
    fmt::print(out, "{},{},{},{:.17g},{:.17g},{:.17g},{},{},{}\n", r.instance, r.seed,
               r.flow_count, r.oracle_energy_j, r.heuristic_energy_j, r.gap_ratio,
               r.heuristic_flagged ? 1 : 0, r.heuristic_feasible ? 1 : 0, r.oracle_feasible ? 1 : 0);
    if (r.oracle_feasible) {
      sum += r.gap_ratio;
      ++count;
    }
  }
  if (count > 0) fmt::print(out, "# mean_gap_ratio,{:.17g},instances,{}\n", sum / count, count);
}

}  // namespace mmbh
