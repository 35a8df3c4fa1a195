#pragma once

#include <optional>
#include <span>
#include <vector>

#include "placekit/placement.hpp"

namespace placekit {

struct FitnessWeights {
  double w1 = 1.0 / 3.0;
  double w2 = 1.0 / 3.0;
  double w3 = 1.0 / 3.0;

  void validate() const;  // each in [0,1], summing to 1 within 1e-9
};

// Maps a raw total response time into [0,1] (clamped affine map).
struct RtNormalizer {
  double lo = 0;
  double hi = 1;

  double operator()(double rt) const;

  static RtNormalizer fixed_max(double max_rt) { return {0.0, max_rt}; }
  // Min-max over a population of totals; all-equal populations map to 0.
  static RtNormalizer min_max(std::span<const double> totals);
};

enum class ReliabilityScope { Used, All };

// Optional contention model for the waiting-time term: components queue
// behind `thread_capacity` concurrent slots per node. Disengaged = zero wait.
struct ContentionModel {
  std::optional<int> thread_capacity;
};

struct EvaluationReport {
  double total_rt = 0;                 // seconds
  std::vector<double> per_service_rt;  // seconds, length X
  double infra_reliability = 0;        // parallel composition over compute
  double pair_reliability = 0;         // infra x mean user rs x mean helper rs
  double service_reliability = 0;      // mean per-service version-rs product
  double normalized_rt = 0;
  double fitness = 0;
};

double transmission_delay(double ds_mb, double bw_mbps, double rtt_s);
double execution_time(double cr_mi, double cc_mips, double wait_s);

double component_response_time(const ScenarioInstance& instance,
                               const Placement& placement, int x, int y,
                               const ContentionModel& contention = {});
double service_response_time(const ScenarioInstance& instance,
                             const Placement& placement, int x,
                             const ContentionModel& contention = {});
double total_response_time(const ScenarioInstance& instance,
                           const Placement& placement,
                           const ContentionModel& contention = {});

double service_reliability(const ScenarioInstance& instance,
                           const Placement& placement, int x);
double mean_service_reliability(const ScenarioInstance& instance,
                                const Placement& placement);
double infrastructure_reliability(
    const ScenarioInstance& instance, const Placement& placement,
    ReliabilityScope scope = ReliabilityScope::Used);
double pair_hardware_reliability(
    const ScenarioInstance& instance, const Placement& placement,
    ReliabilityScope scope = ReliabilityScope::Used);

// Weighted-sum scalarization; lower is better. normalized_rt must be in [0,1].
double fitness(double normalized_rt, double rs_p, double rs_s,
               const FitnessWeights& weights);

EvaluationReport evaluate(const ScenarioInstance& instance,
                          const Placement& placement,
                          const FitnessWeights& weights,
                          const RtNormalizer& normalizer,
                          const ContentionModel& contention = {},
                          ReliabilityScope scope = ReliabilityScope::Used);

}  // namespace placekit
