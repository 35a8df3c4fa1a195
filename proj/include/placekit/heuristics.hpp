#pragma once

#include <functional>
#include <string>
#include <vector>

#include "placekit/placement.hpp"

namespace placekit {

// The six deterministic baseline solvers. Every one either returns a
// placement with zero constraint violations or throws InfeasibleError.

Placement tca(const ScenarioInstance& instance);  // task continuation affinity
Placement lrc(const ScenarioInstance& instance);  // least required CPU
Placement mds(const ScenarioInstance& instance);  // most data size
Placement mr(const ScenarioInstance& instance);   // most reliability
Placement mp(const ScenarioInstance& instance);   // most powerful
Placement lp(const ScenarioInstance& instance);   // least powerful

using Heuristic = std::function<Placement(const ScenarioInstance&)>;

const std::vector<std::string>& heuristic_names();
Heuristic heuristic_by_name(const std::string& name);

}  // namespace placekit
