#pragma once

// JSON views of scenarios and schedules for debugging dumps.

#include <iosfwd>

#include <json.hpp>

#include "mmbh/experiment.hpp"

namespace mmbh {

nlohmann::json to_json(const Scenario& scenario);
nlohmann::json to_json(const Schedule& schedule);
nlohmann::json to_json(const ContentionGraph& graph);

// Scenario, TDMA plan, graph edges and the three schedules of one trial.
nlohmann::json to_json(const TrialOutcome& outcome);

}  // namespace mmbh
