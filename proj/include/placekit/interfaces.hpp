#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "placekit/heuristics.hpp"
#include "placekit/moga.hpp"

namespace placekit {

// Placement wire format: one [version, node_kind, node_index] triple per
// gene, in gene order.
nlohmann::json placement_to_json(const Placement& placement);
Placement placement_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const EvaluationReport& report);
std::string report_csv_header();
std::string report_csv_row(const std::string& solver,
                           const EvaluationReport& report,
                           double mean_component_rt, double runtime_s);

// Fraction of components per host class; sums to 1.
struct Distribution {
  double user = 0, helper = 0, tier1 = 0, tier2 = 0, tier3 = 0;
};
Distribution component_distribution(const ScenarioInstance& instance,
                                    const Placement& placement);
nlohmann::json distribution_to_json(const Distribution& d);

const std::vector<std::string>& solver_names();  // heuristics + moga + oracle

struct SolveOutcome {
  Placement placement;
  EvaluationReport report;
  std::optional<RunHistory> history;
  double runtime_s = 0;
};

// Runs the named solver. Heuristic fitness is reported against the
// worst-heuristic-RT normalizer; MOGA uses its own run normalizer.
SolveOutcome run_solver(const ScenarioInstance& instance,
                        const std::string& solver,
                        const SolverConfig& config);

struct SolveRequest {
  ScenarioInstance instance;
  std::string solver;
  SolverConfig config;
};

// Throws ValidationError on malformed requests.
SolveRequest parse_solve_request(const nlohmann::json& body);
SolverConfig solver_config_from_json(const nlohmann::json& block);

nlohmann::json solve_response_to_json(const ScenarioInstance& instance,
                                      const SolveOutcome& outcome);

std::string run_history_csv(const RunHistory& history);

}  // namespace placekit
