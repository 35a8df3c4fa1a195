#include "placekit/interfaces.hpp"

#include <chrono>
#include <sstream>

#include <nlohmann/json.hpp>

#include "placekit/oracle.hpp"

namespace placekit {

using nlohmann::json;

json placement_to_json(const Placement& placement) {
  json genes = json::array();
  for (const Gene& gene : placement.genes)
    genes.push_back({gene.version, to_string(gene.node.kind),
                     gene.node.index});
  return genes;
}

Placement placement_from_json(const json& doc) {
  if (!doc.is_array())
    throw ValidationError("placement", "expected an array of gene triples");
  Placement placement;
  for (std::size_t g = 0; g < doc.size(); ++g) {
    const std::string path = "placement[" + std::to_string(g) + "]";
    const json& e = doc[g];
    if (!e.is_array() || e.size() != 3 || !e[0].is_number() ||
        !e[1].is_string() || !e[2].is_number())
      throw ValidationError(path, "expected [version, kind, index]");
    Gene gene;
    gene.version = e[0].get<int>();
    const std::string kind = e[1].get<std::string>();
    if (kind == "user") gene.node.kind = NodeKind::User;
    else if (kind == "helper") gene.node.kind = NodeKind::Helper;
    else if (kind == "compute") gene.node.kind = NodeKind::Compute;
    else throw ValidationError(path + "[1]", "unknown node kind: " + kind);
    gene.node.index = e[2].get<int>();
    placement.genes.push_back(gene);
  }
  return placement;
}

json report_to_json(const EvaluationReport& report) {
  return {{"total_rt_s", report.total_rt},
          {"rs_cn", report.infra_reliability},
          {"rs_p", report.pair_reliability},
          {"rs_s", report.service_reliability},
          {"fitness", report.fitness},
          {"per_service_rt_s", report.per_service_rt}};
}

std::string report_csv_header() {
  return "solver,total_rt_s,mean_component_rt_s,rs_cn,rs_p,rs_s,fitness,"
         "runtime_s";
}

std::string report_csv_row(const std::string& solver,
                           const EvaluationReport& report,
                           double mean_component_rt, double runtime_s) {
  std::ostringstream out;
  out.precision(12);
  out << solver << ',' << report.total_rt << ',' << mean_component_rt << ','
      << report.infra_reliability << ',' << report.pair_reliability << ','
      << report.service_reliability << ',' << report.fitness << ','
      << runtime_s;
  return out.str();
}

Distribution component_distribution(const ScenarioInstance& inst,
                                    const Placement& placement) {
  Distribution d;
  const double total = static_cast<double>(placement.genes.size());
  if (total == 0) return d;
  for (const Gene& gene : placement.genes) {
    switch (gene.node.kind) {
      case NodeKind::User: d.user += 1; break;
      case NodeKind::Helper: d.helper += 1; break;
      case NodeKind::Compute:
        switch (inst.compute[gene.node.index].tier) {
          case Tier::Tier1: d.tier1 += 1; break;
          case Tier::Tier2: d.tier2 += 1; break;
          default: d.tier3 += 1; break;
        }
        break;
    }
  }
  d.user /= total;
  d.helper /= total;
  d.tier1 /= total;
  d.tier2 /= total;
  d.tier3 /= total;
  return d;
}

json distribution_to_json(const Distribution& d) {
  return {{"user", d.user},
          {"helper", d.helper},
          {"tier1", d.tier1},
          {"tier2", d.tier2},
          {"tier3", d.tier3}};
}

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names = {
      "moga", "tca", "lrc", "mds", "mr", "mp", "lp", "oracle"};
  return names;
}

namespace {

// Fixed reference normalizer for standalone heuristic reports: raw RT
// divided by the worst heuristic's total.
RtNormalizer heuristic_normalizer(const ScenarioInstance& inst) {
  double worst = 0;
  for (const auto& name : heuristic_names()) {
    const Placement p = heuristic_by_name(name)(inst);
    worst = std::max(worst, total_response_time(inst, p));
  }
  return RtNormalizer::fixed_max(worst);
}

}  // namespace

SolveOutcome run_solver(const ScenarioInstance& inst,
                        const std::string& solver,
                        const SolverConfig& config) {
  SolveOutcome outcome;
  const auto start = std::chrono::steady_clock::now();
  if (solver == "moga") {
    MogaResult result = run_moga(inst, config);
    outcome.placement = std::move(result.best);
    outcome.report = result.report;
    outcome.history = std::move(result.history);
  } else if (solver == "oracle") {
    OracleResult result = enumerate_optimal(inst, config.weights);
    outcome.placement = std::move(result.placement);
    outcome.report = evaluate(inst, outcome.placement, config.weights,
                              result.normalizer);
  } else {
    outcome.placement = heuristic_by_name(solver)(inst);
    outcome.report = evaluate(inst, outcome.placement, config.weights,
                              heuristic_normalizer(inst));
  }
  outcome.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return outcome;
}

SolverConfig solver_config_from_json(const json& block) {
  SolverConfig config;
  if (!block.is_object())
    throw ValidationError("config", "expected an object");
  auto get_int = [&](const char* key, int& out) {
    if (block.contains(key)) out = block[key].get<int>();
  };
  auto get_double = [&](const char* key, double& out) {
    if (block.contains(key)) out = block[key].get<double>();
  };
  get_int("ps", config.ps);
  get_double("cr", config.cr);
  get_double("mr", config.mr);
  get_int("ss", config.ss);
  get_int("it", config.it);
  get_int("elitism_count", config.elitism_count);
  if (block.contains("seed")) config.seed = block["seed"].get<std::uint64_t>();
  get_double("w1", config.weights.w1);
  get_double("w2", config.weights.w2);
  get_double("w3", config.weights.w3);
  if (block.contains("rt_norm")) {
    const std::string mode = block["rt_norm"].get<std::string>();
    if (mode == "init_max") config.rt_norm = RtNormMode::InitMax;
    else if (mode == "per_generation")
      config.rt_norm = RtNormMode::PerGeneration;
    else
      throw ValidationError("config.rt_norm", "unknown mode: " + mode);
  }
  try {
    config.validate();
  } catch (const DomainError& e) {
    throw ValidationError("config", e.what());
  }
  return config;
}

SolveRequest parse_solve_request(const json& body) {
  if (!body.is_object())
    throw ValidationError("", "request body must be a JSON object");
  if (!body.contains("scenario"))
    throw ValidationError("scenario", "missing required field");
  if (!body.contains("solver") || !body["solver"].is_string())
    throw ValidationError("solver", "missing or non-string solver name");
  SolveRequest request;
  request.solver = body["solver"].get<std::string>();
  const auto& names = solver_names();
  if (std::find(names.begin(), names.end(), request.solver) == names.end())
    throw ValidationError("solver", "unknown solver: " + request.solver);
  request.instance = load_scenario(body["scenario"]);
  if (body.contains("config"))
    request.config = solver_config_from_json(body["config"]);
  return request;
}

json solve_response_to_json(const ScenarioInstance& inst,
                            const SolveOutcome& outcome) {
  json response = {
      {"placement", placement_to_json(outcome.placement)},
      {"report", report_to_json(outcome.report)},
      {"runtime_s", outcome.runtime_s},
      {"distribution", distribution_to_json(component_distribution(
                           inst, outcome.placement))}};
  if (outcome.history) {
    json iterations = json::array();
    for (const auto& stats : outcome.history->iterations)
      iterations.push_back(
          {{"best", stats.best}, {"median", stats.median},
           {"worst", stats.worst}});
    response["history"] = std::move(iterations);
  }
  return response;
}

std::string run_history_csv(const RunHistory& history) {
  std::ostringstream out;
  out.precision(12);
  out << "iter,best,median,worst\n";
  for (std::size_t i = 0; i < history.iterations.size(); ++i)
    out << i << ',' << history.iterations[i].best << ','
        << history.iterations[i].median << ',' << history.iterations[i].worst
        << '\n';
  return out.str();
}

}  // namespace placekit
