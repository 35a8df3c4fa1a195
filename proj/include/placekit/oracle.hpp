#pragma once

#include "placekit/metrics.hpp"
#include "placekit/tuning.hpp"

namespace placekit {

struct OracleResult {
  Placement placement;
  double fitness = 0;
  double max_rt = 0;  // largest feasible total response time (the normalizer)
  RtNormalizer normalizer;
  std::uint64_t enumerated = 0;  // feasible placements visited
};

// Exhaustive search over every feasible placement. Two passes: the first
// finds the largest feasible total RT, the second minimizes fitness under
// rt/max_rt normalization. Ties resolve to the lexicographically smallest
// gene array. Throws DomainError if the search space exceeds `cap`.
OracleResult enumerate_optimal(const ScenarioInstance& instance,
                               const FitnessWeights& weights,
                               double cap = 1e7);

// Independent O(n^2) dominance filter; must agree with tuning::pareto_front.
std::vector<ParetoPoint> dominance_oracle(
    const std::vector<ParetoPoint>& points);

}  // namespace placekit
