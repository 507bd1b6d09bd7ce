#include "mmbh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mmbh/error.hpp"

namespace mmbh {

std::string to_string(Constraint c) {
  switch (c) {
    case Constraint::one_pairing: return "one pairing per flow";
    case Constraint::superframe: return "superframe length";
    case Constraint::independence: return "independence";
    case Constraint::throughput: return "throughput";
    case Constraint::power: return "power limit";
  }
  return "unknown";
}

std::string FeasibilityReport::summary() const {
  if (ok) return "feasible";
  std::string s = fmt::format("{} violation(s):", violations.size());
  for (const auto& v : violations) s += fmt::format("\n  {}: {}", to_string(v.constraint), v.detail);
  return s;
}

namespace {

bool meets(double achieved, double required) {
  return achieved >= required * (1.0 - detail::kRelTol);
}

double actual_rate(FlowId f, const Pairing& pairing, const LinkTable& links) {
  double interference = 0.0;
  for (FlowId j : pairing.flows) {
    if (j != f) interference += links.coupling(j, f) * pairing.power.at(j);
  }
  return shannon_rate(links.signal_gain(f) * pairing.power.at(f), interference, links.params());
}

}  // namespace

FeasibilityReport check_feasible(const Schedule& schedule, const Scenario& served,
                                 const ContentionGraph& graph, const LinkTable& links) {
  const SystemParams& p = links.params();
  FeasibilityReport rep;
  auto fail = [&](Constraint c, FlowId f, int k, std::string d) {
    rep.violations.push_back(Violation{c, f, k, std::move(d)});
  };

  std::map<FlowId, int> seen;
  for (const auto& pairing : schedule.pairings) {
    for (FlowId f : pairing.flows) ++seen[f];
  }
  for (const auto& f : served.flows) {
    const int n = seen.count(f.id) ? seen[f.id] : 0;
    if (n != 1) fail(Constraint::one_pairing, f.id, 0, fmt::format("flow {} appears in {} pairings", f.id, n));
    seen.erase(f.id);
  }
  for (const auto& [f, n] : seen) {
    fail(Constraint::one_pairing, f, 0, fmt::format("pairings contain unknown flow {}", f));
  }

  long long total = 0;
  for (const auto& pairing : schedule.pairings) {
    if (pairing.ctas < 0) {
      fail(Constraint::superframe, -1, pairing.index,
           fmt::format("pairing {} has negative CTA count {}", pairing.index, pairing.ctas));
    }
    total += pairing.ctas;
  }
  if (total > p.cta_count) {
    fail(Constraint::superframe, -1, 0, fmt::format("{} CTAs used, superframe has {}", total, p.cta_count));
  }

  for (const auto& pairing : schedule.pairings) {
    for (std::size_t a = 0; a < pairing.flows.size(); ++a) {
      for (std::size_t b = a + 1; b < pairing.flows.size(); ++b) {
        if (graph.has_edge(pairing.flows[a], pairing.flows[b])) {
          fail(Constraint::independence, pairing.flows[a], pairing.index,
               fmt::format("flows {} and {} conflict in pairing {}", pairing.flows[a],
                           pairing.flows[b], pairing.index));
        }
      }
    }
  }

  for (const auto& pairing : schedule.pairings) {
    for (FlowId f : pairing.flows) {
      auto it = pairing.power.find(f);
      if (it == pairing.power.end()) {
        fail(Constraint::power, f, pairing.index, fmt::format("flow {} has no power", f));
        continue;
      }
      if (!(it->second >= 0.0) || it->second > p.max_power_w * (1.0 + detail::kRelTol)) {
        fail(Constraint::power, f, pairing.index,
             fmt::format("flow {} power {:.6g} W outside [0, {:.6g}]", f, it->second, p.max_power_w));
      }
    }
  }

  for (const auto& pairing : schedule.pairings) {
    if (std::any_of(pairing.flows.begin(), pairing.flows.end(),
                    [&](FlowId f) { return !pairing.power.count(f); })) {
      continue;
    }
    for (FlowId f : pairing.flows) {
      const FlowControl* fc = schedule.control(f);
      if (fc && fc->shortfall) {
        fail(Constraint::throughput, f, pairing.index, fmt::format("flow {} is flagged short", f));
        continue;
      }
      double demand = 0.0;
      try {
        demand = served.flow(f).demand_bps;
      } catch (const Error&) {
        continue;  // already reported as unknown
      }
      double got = 0.0;
      try {
        got = actual_rate(f, pairing, links) * pairing.ctas / p.cta_count;
      } catch (const DegenerateGeometryError& e) {
        // A co-member transmits from this flow's receiver: half duplex, nothing gets through.
        fail(Constraint::throughput, f, pairing.index, e.what());
        continue;
      }
      if (!meets(got, demand)) {
        fail(Constraint::throughput, f, pairing.index,
             fmt::format("flow {} delivers {:.6g} bit/s of {:.6g}", f, got, demand));
      }
    }
  }

  rep.ok = rep.violations.empty();
  return rep;
}

FeasibilityReport check_feasible(const Schedule& schedule, const Scenario& served,
                                 const SystemParams& params) {
  return check_feasible(schedule, served, build_graph(served, params), LinkTable(served, params));
}

std::string OracleResult::report() const {
  std::string s = fmt::format(
      "partitions={} independent={} candidates={} feasible={} rejected_independence={} rejected_throughput={}",
      partitions, independent_partitions, candidates, feasible_candidates, rejected_independence,
      rejected_throughput);
  if (feasible) {
    s += fmt::format("\noptimum energy {:.9g} J, partition {}", energy_j, partition);
  } else {
    s += "\nno feasible configuration";
    if (independent_partitions == 0) s += "; every partition has a conflicting pair";
    else if (feasible_candidates == 0) s += "; every CTA split misses some demand";
  }
  return s;
}

namespace {

// Per-block outcome for one theta value; blocks do not interact across
// pairings, so these are computed once per (block, theta).
struct BlockEval {
  double energy = 0.0;
  bool feasible = false;
};

struct Block {
  std::vector<FlowId> flows;
  std::vector<BlockEval> by_theta;  // index theta, 1..M
};

Block evaluate_block(std::vector<FlowId> flows, const Scenario& served, const LinkTable& links) {
  const SystemParams& p = links.params();
  Block b;
  b.flows = std::move(flows);
  b.by_theta.resize(static_cast<std::size_t>(p.cta_count) + 1);
  for (int theta = 1; theta <= p.cta_count; ++theta) {
    Pairing pairing;
    pairing.flows = b.flows;
    pairing.ctas = theta;
    double energy = 0.0;
    for (FlowId f : b.flows) {
      const PowerChoice pc = flow_power(f, b.flows, theta, served.flow(f).demand_bps, links);
      pairing.power[f] = pc.power;
      energy += pc.power * theta * p.cta_duration_s;
    }
    bool ok = true;
    for (FlowId f : b.flows) {
      const double got = actual_rate(f, pairing, links) * theta / p.cta_count;
      ok = ok && meets(got, served.flow(f).demand_bps);
    }
    b.by_theta[static_cast<std::size_t>(theta)] = BlockEval{energy, ok};
  }
  return b;
}

}  // namespace

OracleResult solve_exact(const Scenario& served, const SystemParams& params, OracleLimits limits) {
  const int n = static_cast<int>(served.flows.size());
  const int m = params.cta_count;
  if (n < 1) throw DomainError("oracle needs at least one flow");
  if (n > limits.max_flows) {
    throw DomainError(fmt::format("oracle limited to {} flows, got {}", limits.max_flows, n));
  }
  if (m > limits.max_ctas) {
    throw DomainError(fmt::format("oracle limited to M <= {}, got {}", limits.max_ctas, m));
  }
  const ContentionGraph graph = build_graph(served, params);
  const LinkTable links(served, params);

  std::vector<FlowId> ids;
  for (const auto& f : served.flows) ids.push_back(f.id);

  OracleResult res;
  double best_energy = std::numeric_limits<double>::infinity();
  std::vector<int> best_rgs;
  std::vector<int> best_theta;
  std::vector<std::vector<FlowId>> best_blocks;

  std::map<std::vector<FlowId>, Block> cache;

  // Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  while (true) {
    ++res.partitions;
    const int k = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<FlowId>> blocks(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i) blocks[static_cast<std::size_t>(rgs[i])].push_back(ids[i]);

    bool independent = true;
    for (const auto& blk : blocks) {
      for (std::size_t a = 0; a < blk.size() && independent; ++a) {
        for (std::size_t b = a + 1; b < blk.size() && independent; ++b) {
          independent = !graph.has_edge(blk[a], blk[b]);
        }
      }
    }

    if (!independent) {
      ++res.rejected_independence;
    } else {
      ++res.independent_partitions;
      std::vector<const Block*> evals;
      for (const auto& blk : blocks) {
        std::vector<FlowId> key = blk;
        std::sort(key.begin(), key.end());
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, evaluate_block(key, served, links)).first;
        evals.push_back(&it->second);
      }
      // Every theta vector with theta_k >= 1 and sum <= M, lexicographic.
      std::vector<int> theta(static_cast<std::size_t>(k), 1);
      int used = k;
      if (used <= m) {
        while (true) {
          ++res.candidates;
          double energy = 0.0;
          bool ok = true;
          for (int b = 0; b < k; ++b) {
            const BlockEval& e = evals[static_cast<std::size_t>(b)]->by_theta[static_cast<std::size_t>(theta[b])];
            energy += e.energy;
            ok = ok && e.feasible;
          }
          if (!ok) {
            ++res.rejected_throughput;
          } else {
            ++res.feasible_candidates;
            const bool better =
                energy < best_energy ||
                (energy == best_energy &&
                 (rgs < best_rgs || (rgs == best_rgs && theta < best_theta)));
            if (better) {
              best_energy = energy;
              best_rgs = rgs;
              best_theta = theta;
              best_blocks = blocks;
            }
          }
          // Odometer: bump the rightmost position while room remains,
          // otherwise reset it to 1 and carry left.
          int pos = k - 1;
          for (; pos >= 0; --pos) {
            auto& t = theta[static_cast<std::size_t>(pos)];
            if (used < m) {
              ++t;
              ++used;
              break;
            }
            used -= t - 1;
            t = 1;
          }
          if (pos < 0) break;
        }
      }
    }

    // Next restricted growth string.
    int i = n - 1;
    while (i > 0) {
      const int prefix_max = *std::max_element(rgs.begin(), rgs.begin() + i);
      if (rgs[static_cast<std::size_t>(i)] <= prefix_max) {
        ++rgs[static_cast<std::size_t>(i)];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        break;
      }
      --i;
    }
    if (i == 0) break;
  }

  if (best_rgs.empty()) return res;

  res.feasible = true;
  res.energy_j = best_energy;
  res.partition = best_rgs;
  Schedule& s = res.schedule;
  s.scheme = Scheme::oracle;
  s.params = params;
  for (std::size_t b = 0; b < best_blocks.size(); ++b) {
    Pairing pairing;
    pairing.index = static_cast<int>(b) + 1;
    pairing.flows = best_blocks[b];
    std::sort(pairing.flows.begin(), pairing.flows.end());
    pairing.ctas = best_theta[b];
    s.pairings.push_back(std::move(pairing));
  }
  for (auto& pairing : s.pairings) {
    for (FlowId f : pairing.flows) {
      const double demand = served.flow(f).demand_bps;
      const PowerChoice pc = flow_power(f, pairing.flows, pairing.ctas, demand, links);
      pairing.power[f] = pc.power;
    }
  }
  for (const auto& f : served.flows) {
    const Pairing& pairing = s.pairing_of(f.id);
    const PowerChoice pc = flow_power(f.id, pairing.flows, pairing.ctas, f.demand_bps, links);
    FlowControl fc;
    fc.flow = f.id;
    fc.pairing = pairing.index;
    fc.demand_bps = f.demand_bps;
    fc.rate_no_control = rate_no_control(f.id, pairing.flows, links);
    fc.ctas_needed = f.demand_bps * m / fc.rate_no_control;
    fc.assumed_rate = pc.assumed_rate;
    fc.unclamped_power = pc.unclamped_power;
    fc.power = pc.power;
    fc.clamped = pc.clamped;
    fc.shortfall = false;  // throughput verified at actual powers during the search
    s.flows.push_back(fc);
  }
  return res;
}

}  // namespace mmbh
