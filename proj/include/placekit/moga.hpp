#pragma once

#include <cstdint>
#include <string>

#include "placekit/metrics.hpp"
#include "placekit/placement.hpp"

namespace placekit {

enum class RtNormMode {
  // Bounds frozen from the initial population; keeps elite fitness stable
  // across generations.
  InitMax,
  // Min-max over the current generation, recomputed every generation.
  PerGeneration,
};

struct SolverConfig {
  int ps = 200;       // population size
  double cr = 0.6;    // crossover rate
  double mr = 0.01;   // per-gene mutation rate
  int ss = 20;        // tournament size
  int it = 50;        // iterations
  FitnessWeights weights;
  int elitism_count = -1;  // <0 selects max(1, round(0.02 * ps))
  std::uint64_t seed = 0;
  RtNormMode rt_norm = RtNormMode::InitMax;

  int effective_elitism() const;
  void validate() const;
};

// Paper-tabulated parameter presets.
SolverConfig preset_config(const std::string& scale);  // small..xlarge

struct IterationStats {
  double best = 0;
  double median = 0;
  double worst = 0;
};

struct RunHistory {
  std::vector<IterationStats> iterations;
  double runtime_s = 0;
};

struct MogaResult {
  Placement best;
  EvaluationReport report;
  RunHistory history;
  RtNormalizer normalizer;  // the normalizer the reported fitness uses
};

MogaResult run_moga(const ScenarioInstance& instance,
                    const SolverConfig& config);

// Draws `ss` distinct indices uniformly; returns the one with minimal
// fitness (ties to the lower index).
int tournament_select(std::span<const double> fitnesses, int ss, Rng& rng);

// Cut point drawn uniformly from [1, L-1]; gene ranges swapped across it.
std::pair<Placement, Placement> single_point_crossover(const Placement& a,
                                                       const Placement& b,
                                                       Rng& rng);

// Each gene independently re-drawn with probability mutation_rate.
Placement insertion_mutation(const ScenarioInstance& instance, Placement p,
                             double mutation_rate, Rng& rng);

// Parameter-estimation formulas fitted in the source study.
int estimate_population_size(int x, int y, int n, int m, int k);
double estimate_crossover_rate(int x, int y, int n, int m, int k);
int estimate_iterations(int x, int y, int n, int m, int k);

}  // namespace placekit
