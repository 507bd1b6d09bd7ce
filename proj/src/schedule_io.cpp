#include "mmbh/schedule_io.hpp"

#include <fmt/format.h>

namespace mmbh {

using nlohmann::json;

json to_json(const Scenario& scenario) {
  json j;
  j["seed"] = scenario.seed;
  j["hash"] = fmt::format("{:016x}", scenario.hash());
  j["nodes"] = json::array();
  for (const auto& n : scenario.nodes) {
    j["nodes"].push_back({{"id", n.id}, {"x", n.position.x}, {"y", n.position.y}});
  }
  j["flows"] = json::array();
  for (const auto& f : scenario.flows) {
    j["flows"].push_back(
        {{"id", f.id}, {"sender", f.sender}, {"receiver", f.receiver}, {"demand_bps", f.demand_bps}});
  }
  return j;
}

json to_json(const Schedule& s) {
  json j;
  j["scheme"] = to_string(s.scheme);
  j["total_ctas"] = s.total_ctas();
  j["pairings"] = json::array();
  for (const auto& p : s.pairings) {
    json powers = json::object();
    for (const auto& [flow, w] : p.power) powers[std::to_string(flow)] = w;
    j["pairings"].push_back({{"index", p.index}, {"flows", p.flows}, {"ctas", p.ctas}, {"power_w", powers}});
  }
  j["flows"] = json::array();
  for (const auto& fc : s.flows) {
    j["flows"].push_back({{"flow", fc.flow},
                          {"pairing", fc.pairing},
                          {"demand_bps", fc.demand_bps},
                          {"rate_no_control_bps", fc.rate_no_control},
                          {"ctas_needed", fc.ctas_needed},
                          {"assumed_rate_bps", fc.assumed_rate},
                          {"unclamped_power_w", fc.unclamped_power},
                          {"power_w", fc.power},
                          {"clamped", fc.clamped},
                          {"shortfall", fc.shortfall}});
  }
  return j;
}

json to_json(const ContentionGraph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  return {{"sigma", g.sigma()}, {"vertices", g.vertices()}, {"edges", edges}};
}

json to_json(const TrialOutcome& o) {
  const SchemeSet& s = o.schemes;
  json plan;
  plan["reference"] = to_string(s.plan.mode);
  plan["flows"] = s.plan.flows;
  plan["rate_bps"] = s.plan.rate_bps;
  plan["required_ctas"] = s.plan.required;
  plan["ctas"] = s.plan.ctas;
  plan["target_bps"] = s.plan.target_bps;
  return {{"sweep_value", o.sweep_value},
          {"trial", o.trial},
          {"scenario", to_json(o.scenario)},
          {"tdma_plan", plan},
          {"graph", to_json(s.graph)},
          {"schedules", {to_json(s.tdma), to_json(s.proposed), to_json(s.ctfp)}}};
}

}  // namespace mmbh
