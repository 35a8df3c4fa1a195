#pragma once

#include <cstdint>
#include <vector>

#include "placekit/moga.hpp"

namespace placekit {

struct ParetoPoint {
  SolverConfig config;
  double best_fitness = 0;
  double runtime_s = 0;
};

struct GridSpec {
  std::vector<int> ps;
  std::vector<double> elitism_rate;  // elitism_count = round(rate * ps)
  std::vector<double> cr;
  std::vector<double> mr;

  // Desk-scale defaults.
  static GridSpec defaults();
};

// One point per Cartesian grid cell; fitness and runtime averaged over
// `repeats` seeded runs. Throws DomainError on an empty grid.
std::vector<ParetoPoint> grid_search(const ScenarioInstance& instance,
                                     const GridSpec& grid,
                                     const SolverConfig& base, int repeats,
                                     std::uint64_t seed);

// Non-dominated subset under minimization of (best_fitness, runtime_s),
// ordered by ascending runtime. Exact duplicates keep the lowest-hash
// representative.
std::vector<ParetoPoint> pareto_front(const std::vector<ParetoPoint>& points);

// Per-parameter median (lower median on even counts) across the front.
SolverConfig select_config(const std::vector<ParetoPoint>& front);

// Stable fingerprint of the tunable parameters, used for tie-breaking.
std::uint64_t config_hash(const SolverConfig& config);

// Residuals of the published scaling formulas against a tuned selection.
struct FormulaResidual {
  double predicted = 0;
  double selected = 0;
  double relative_error = 0;
};
struct FormulaResiduals {
  FormulaResidual ps;
  FormulaResidual it;
  FormulaResidual cr;
};
FormulaResiduals formula_residuals(int x, int y, int n, int m, int k,
                                   const SolverConfig& selected);

}  // namespace placekit
