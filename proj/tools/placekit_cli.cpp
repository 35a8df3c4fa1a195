#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "placekit/interfaces.hpp"
#include "placekit/oracle.hpp"
#include "placekit/scenario.hpp"
#include "placekit/server.hpp"
#include "placekit/tuning.hpp"

namespace {

using namespace placekit;
using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

struct MogaFlags {
  SolverConfig config;
  std::string preset;
  bool auto_estimate = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--preset", preset,
                    "parameter preset (small|medium|large|xlarge)");
    cmd->add_flag("--auto", auto_estimate,
                  "estimate ps/cr/it from the instance dimensions");
    cmd->add_option("--ps", config.ps, "population size");
    cmd->add_option("--cr", config.cr, "crossover rate");
    cmd->add_option("--mr", config.mr, "mutation rate");
    cmd->add_option("--ss", config.ss, "tournament size");
    cmd->add_option("--it", config.it, "iterations");
    cmd->add_option("--elitism", config.elitism_count, "elitism count");
    cmd->add_option("--seed", config.seed, "rng seed");
    cmd->add_option("--w1", config.weights.w1, "response-time weight");
    cmd->add_option("--w2", config.weights.w2, "hardware-reliability weight");
    cmd->add_option("--w3", config.weights.w3, "service-reliability weight");
  }

  SolverConfig resolve(const ScenarioInstance& inst, CLI::App* cmd) const {
    SolverConfig resolved = config;
    if (!preset.empty()) {
      SolverConfig base = preset_config(preset);
      base.seed = config.seed;
      base.weights = config.weights;
      // Explicit flags override the preset.
      for (const char* flag : {"--ps", "--cr", "--mr", "--ss", "--it",
                               "--elitism"}) {
        if (cmd->count(flag) == 0) continue;
        if (std::string(flag) == "--ps") base.ps = config.ps;
        if (std::string(flag) == "--cr") base.cr = config.cr;
        if (std::string(flag) == "--mr") base.mr = config.mr;
        if (std::string(flag) == "--ss") base.ss = config.ss;
        if (std::string(flag) == "--it") base.it = config.it;
        if (std::string(flag) == "--elitism")
          base.elitism_count = config.elitism_count;
      }
      resolved = base;
    }
    if (auto_estimate) {
      const int x = inst.service_count();
      const int y = inst.components_per_service();
      const int n = inst.user_count();
      const int m = inst.helper_count();
      const int k = inst.compute_count();
      resolved.ps = estimate_population_size(x, y, n, m, k);
      resolved.cr = estimate_crossover_rate(x, y, n, m, k);
      resolved.it = estimate_iterations(x, y, n, m, k);
      resolved.ss = std::max(1, resolved.ps / 10);
    }
    return resolved;
  }
};

int cmd_generate(const std::string& scale, std::uint64_t seed,
                 const std::string& out) {
  const ScenarioInstance inst = generate(builtin_scale(scale), seed);
  const std::string doc = save_scenario(inst).dump(2);
  if (out.empty())
    std::cout << doc << '\n';
  else
    write_file(out, doc + "\n");
  return 0;
}

int cmd_solve(const std::string& scenario_path, const std::string& solver,
              const MogaFlags& flags, CLI::App* cmd, const std::string& out,
              const std::string& report_path,
              const std::string& history_path) {
  const ScenarioInstance inst = load_scenario_file(scenario_path);
  const SolverConfig config = flags.resolve(inst, cmd);
  const SolveOutcome outcome = run_solver(inst, solver, config);

  const json response = solve_response_to_json(inst, outcome);
  if (out.empty())
    std::cout << response.dump(2) << '\n';
  else
    write_file(out, response["placement"].dump(2) + "\n");
  if (!report_path.empty())
    write_file(report_path, response["report"].dump(2) + "\n");
  if (!history_path.empty() && outcome.history)
    write_file(history_path, run_history_csv(*outcome.history));

  std::cerr << "solver=" << solver << " total_rt_s="
            << outcome.report.total_rt << " rs_cn="
            << outcome.report.infra_reliability << " rs_s="
            << outcome.report.service_reliability << " fitness="
            << outcome.report.fitness << " runtime_s=" << outcome.runtime_s
            << '\n';
  return 0;
}

int cmd_compare(const std::string& scenario_path, const MogaFlags& flags,
                CLI::App* cmd, const std::string& out) {
  const ScenarioInstance inst = load_scenario_file(scenario_path);
  const SolverConfig config = flags.resolve(inst, cmd);
  const int components = inst.gene_count();

  std::ostringstream csv;
  csv << report_csv_header() << '\n';
  std::vector<std::string> solvers = heuristic_names();
  solvers.push_back("moga");
  for (const auto& solver : solvers) {
    const SolveOutcome outcome = run_solver(inst, solver, config);
    csv << report_csv_row(solver, outcome.report,
                          outcome.report.total_rt / components,
                          outcome.runtime_s)
        << '\n';
  }
  if (out.empty())
    std::cout << csv.str();
  else
    write_file(out, csv.str());
  return 0;
}

int cmd_tune(const std::string& scenario_path, const std::string& scale,
             std::uint64_t gen_seed, const std::string& grid_path,
             int repeats, std::uint64_t seed, const std::string& out) {
  ScenarioInstance inst = scenario_path.empty()
                              ? generate(builtin_scale(scale), gen_seed)
                              : load_scenario_file(scenario_path);
  GridSpec grid = GridSpec::defaults();
  if (!grid_path.empty()) {
    std::ifstream in(grid_path);
    if (!in) throw std::runtime_error("cannot open grid file: " + grid_path);
    json doc;
    in >> doc;
    if (doc.contains("ps")) grid.ps = doc["ps"].get<std::vector<int>>();
    if (doc.contains("elitism"))
      grid.elitism_rate = doc["elitism"].get<std::vector<double>>();
    if (doc.contains("cr")) grid.cr = doc["cr"].get<std::vector<double>>();
    if (doc.contains("mr")) grid.mr = doc["mr"].get<std::vector<double>>();
  }
  SolverConfig base;
  base.it = 30;  // short runs; tuning explores configurations, not optima
  const auto points = grid_search(inst, grid, base, repeats, seed);
  const auto front = pareto_front(points);
  const SolverConfig selected = select_config(front);

  auto on_front = [&](const ParetoPoint& p) {
    for (const auto& f : front)
      if (config_hash(f.config) == config_hash(p.config)) return true;
    return false;
  };
  std::ostringstream csv;
  csv.precision(12);
  csv << "ps,elitism,cr,mr,fitness,runtime_s,on_front\n";
  for (const auto& p : points)
    csv << p.config.ps << ',' << p.config.effective_elitism() << ','
        << p.config.cr << ',' << p.config.mr << ',' << p.best_fitness << ','
        << p.runtime_s << ',' << (on_front(p) ? 1 : 0) << '\n';
  if (out.empty())
    std::cout << csv.str();
  else
    write_file(out, csv.str());
  std::cerr << "selected: ps=" << selected.ps << " elitism="
            << selected.effective_elitism() << " cr=" << selected.cr
            << " mr=" << selected.mr << '\n';
  return 0;
}

int cmd_oracle(const std::string& scenario_path, double cap,
               const std::string& out) {
  const ScenarioInstance inst = load_scenario_file(scenario_path);
  FitnessWeights weights;
  const OracleResult result = enumerate_optimal(inst, weights, cap);
  json doc = {{"placement", placement_to_json(result.placement)},
              {"fitness", result.fitness},
              {"max_rt_s", result.max_rt},
              {"feasible_placements", result.enumerated}};
  if (out.empty())
    std::cout << doc.dump(2) << '\n';
  else
    write_file(out, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Service placement toolkit for multi-tier edge-to-cloud "
               "infrastructures"};
  app.require_subcommand(1);

  // generate
  auto* generate_cmd =
      app.add_subcommand("generate", "generate a random scenario");
  std::string scale = "small";
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  generate_cmd->add_option("--scale", scale, "small|medium|large|xlarge");
  generate_cmd->add_option("--seed", gen_seed, "rng seed");
  generate_cmd->add_option("--out", gen_out, "output file (default stdout)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run one solver");
  std::string scenario_path, solver = "moga", solve_out, report_path,
              history_path;
  solve_cmd->add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();
  solve_cmd->add_option("--solver", solver,
                        "moga|tca|lrc|mds|mr|mp|lp|oracle");
  solve_cmd->add_option("--out", solve_out, "placement output file");
  solve_cmd->add_option("--report", report_path, "report output file");
  solve_cmd->add_option("--history", history_path,
                        "convergence CSV (moga only)");
  MogaFlags solve_flags;
  solve_flags.attach(solve_cmd);

  // compare
  auto* compare_cmd =
      app.add_subcommand("compare", "run all solvers, emit comparison CSV");
  std::string compare_scenario, compare_out;
  compare_cmd->add_option("--scenario", compare_scenario, "scenario file")
      ->required();
  compare_cmd->add_option("--out", compare_out, "CSV output file");
  MogaFlags compare_flags;
  compare_flags.attach(compare_cmd);

  // tune
  auto* tune_cmd = app.add_subcommand("tune", "grid-search MOGA parameters");
  std::string tune_scenario, tune_scale = "small", grid_path, tune_out;
  std::uint64_t tune_gen_seed = 0, tune_seed = 0;
  int repeats = 3;
  tune_cmd->add_option("--scenario", tune_scenario, "scenario file");
  tune_cmd->add_option("--scale", tune_scale,
                       "generate this scale when no --scenario is given");
  tune_cmd->add_option("--gen-seed", tune_gen_seed, "generation seed");
  tune_cmd->add_option("--grid", grid_path, "grid JSON file");
  tune_cmd->add_option("--repeats", repeats, "seeds per grid cell");
  tune_cmd->add_option("--seed", tune_seed, "base rng seed");
  tune_cmd->add_option("--out", tune_out, "CSV output file");

  // oracle
  auto* oracle_cmd =
      app.add_subcommand("oracle", "exhaustive optimum for tiny scenarios");
  std::string oracle_scenario, oracle_out;
  double cap = 1e7;
  oracle_cmd->add_option("--scenario", oracle_scenario, "scenario file")
      ->required();
  oracle_cmd->add_option("--cap", cap, "search-space cap");
  oracle_cmd->add_option("--out", oracle_out, "output file");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP solve service");
  std::string host = "0.0.0.0";
  int port = 8080;
  serve_cmd->add_option("--host", host, "bind address");
  serve_cmd->add_option("--port", port, "port");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate_cmd->parsed()) return cmd_generate(scale, gen_seed, gen_out);
    if (solve_cmd->parsed())
      return cmd_solve(scenario_path, solver, solve_flags, solve_cmd,
                       solve_out, report_path, history_path);
    if (compare_cmd->parsed())
      return cmd_compare(compare_scenario, compare_flags, compare_cmd,
                         compare_out);
    if (tune_cmd->parsed())
      return cmd_tune(tune_scenario, tune_scale, tune_gen_seed, grid_path,
                      repeats, tune_seed, tune_out);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle_scenario, cap,
                                                oracle_out);
    if (serve_cmd->parsed()) {
      placekit::SolveServer server;
      std::cerr << "listening on " << host << ":" << port << '\n';
      return server.listen(host, port) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
