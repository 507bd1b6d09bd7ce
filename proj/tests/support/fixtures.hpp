#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "mmbh/model.hpp"
#include "mmbh/units.hpp"

namespace fixture {

inline mmbh::Scenario make_scenario(const std::vector<mmbh::Vec2>& points,
                                    const std::vector<std::pair<int, int>>& links,
                                    double demand_bps = 1e9) {
  mmbh::Scenario sc;
  for (std::size_t i = 0; i < points.size(); ++i) {
    sc.nodes.push_back({static_cast<int>(i) + 1, points[i]});
  }
  for (std::size_t i = 0; i < links.size(); ++i) {
    sc.flows.push_back({static_cast<int>(i) + 1, links[i].first, links[i].second, demand_bps});
  }
  return sc;
}

// Five-node, six-flow example over a 20-CTA superframe.
//
// Geometry: equilateral triangle A, B, C with a rhombus B, E, D, C hung off
// side BC, so all six links are 4.5 m long and share one SNR. That SNR is
// 40/9, the value at which halving the rate of a flow cuts its power to 30%
// (0.1 mW down to 0.03 mW at twice the airtime). MUI is switched off, so the
// graph holds adjacency edges only.
//
// Flow ids are assigned so the lowest-id tie-break yields the pairings
// {A->B, C->D}, {B->E, C->A}, {D->E, C->B}. Real-valued TDMA needs sit just
// under their ceilings (3, 4, 4, 3, 2, 4), summing to exactly M.
struct MotivatingExample {
  mmbh::Scenario scenario;
  mmbh::SystemParams params;
  static constexpr double kSnr = 40.0 / 9.0;
  static constexpr double kLink = 4.5;
  enum Id { CB = 1, AB = 2, CD = 3, BE = 4, CA = 5, DE = 6 };
};

inline MotivatingExample motivating_example() {
  MotivatingExample ex;
  mmbh::SystemParams& p = ex.params;
  p = mmbh::SystemParams::defaults();
  p.cta_count = 20;
  p.mui_factor = 0.0;
  p.max_power_w = 1e-4;
  const double s = MotivatingExample::kLink;
  const double h = s * std::sqrt(3.0) / 2.0;
  // C and B on a horizontal side; A above it; D and E straight below.
  const mmbh::Vec2 A{2.0 + s / 2.0, 5.0 + h}, B{2.0 + s, 5.0}, C{2.0, 5.0}, D{2.0, 5.0 - s},
      E{2.0 + s, 5.0 - s};
  // Nodes 1..5 = A..E.
  ex.scenario.nodes = {{1, A}, {2, B}, {3, C}, {4, D}, {5, E}};
  ex.scenario.flows = {{MotivatingExample::CB, 3, 2, 0.0}, {MotivatingExample::AB, 1, 2, 0.0},
                       {MotivatingExample::CD, 3, 4, 0.0}, {MotivatingExample::BE, 2, 5, 0.0},
                       {MotivatingExample::CA, 3, 1, 0.0}, {MotivatingExample::DE, 4, 5, 0.0}};
  const double signal = mmbh::signal_power(ex.scenario.flows[0], p.max_power_w, ex.scenario, p);
  p.noise_psd_w_per_hz = signal / (MotivatingExample::kSnr * p.bandwidth_hz);

  const double rate = p.efficiency * p.bandwidth_hz * std::log2(1.0 + MotivatingExample::kSnr);
  const double needs[] = {3.7, 3.0, 3.2, 3.5, 2.9, 1.6};
  for (std::size_t i = 0; i < 6; ++i) {
    ex.scenario.flows[i].demand_bps = rate * needs[i] / p.cta_count;
  }
  return ex;
}

}  // namespace fixture
