#include "placekit/moga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "placekit/parallel.hpp"

namespace placekit {

int SolverConfig::effective_elitism() const {
  if (elitism_count >= 0) return elitism_count;
  return std::max(1, static_cast<int>(std::lround(0.02 * ps)));
}

void SolverConfig::validate() const {
  if (ps < 2) throw DomainError("population size must be >= 2");
  if (cr < 0 || cr > 1) throw DomainError("crossover rate must be in [0,1]");
  if (mr < 0 || mr > 1) throw DomainError("mutation rate must be in [0,1]");
  if (ss < 1 || ss > ps)
    throw DomainError("tournament size must be in [1, ps]");
  if (it < 1) throw DomainError("iteration count must be >= 1");
  if (effective_elitism() >= ps)
    throw DomainError("elitism count must be < ps");
  weights.validate();
}

SolverConfig preset_config(const std::string& scale) {
  SolverConfig config;
  if (scale == "small") {
    config.ps = 200; config.cr = 0.6; config.mr = 0.01; config.ss = 20;
    config.it = 50;
  } else if (scale == "medium") {
    config.ps = 300; config.cr = 0.7; config.mr = 0.01; config.ss = 30;
    config.it = 100;
  } else if (scale == "large") {
    config.ps = 400; config.cr = 0.7; config.mr = 0.01; config.ss = 40;
    config.it = 150;
  } else if (scale == "xlarge") {
    config.ps = 500; config.cr = 0.8; config.mr = 0.01; config.ss = 50;
    config.it = 200;
  } else {
    throw std::invalid_argument("unknown preset scale: " + scale);
  }
  return config;
}

int tournament_select(std::span<const double> fitnesses, int ss, Rng& rng) {
  const int n = static_cast<int>(fitnesses.size());
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> drawn;
  drawn.reserve(ss);
  std::sample(pool.begin(), pool.end(), std::back_inserter(drawn), ss, rng);
  int best = drawn.front();
  for (int idx : drawn)
    if (fitnesses[idx] < fitnesses[best]) best = idx;
  return best;
}

std::pair<Placement, Placement> single_point_crossover(const Placement& a,
                                                       const Placement& b,
                                                       Rng& rng) {
  const int length = static_cast<int>(a.genes.size());
  const int cut = std::uniform_int_distribution<int>(1, length - 1)(rng);
  Placement first = a;
  Placement second = b;
  for (int g = cut; g < length; ++g)
    std::swap(first.genes[g], second.genes[g]);
  return {std::move(first), std::move(second)};
}

Placement insertion_mutation(const ScenarioInstance& inst, Placement p,
                             double mutation_rate, Rng& rng) {
  const int y_count = inst.components_per_service();
  const int v_count = inst.versions_per_component();
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int x = 0; x < inst.service_count(); ++x) {
    const auto hosts = legal_hosts(inst, x);
    for (int y = 0; y < y_count; ++y) {
      if (coin(rng) >= mutation_rate) continue;
      Gene& gene = p.genes[x * y_count + y];
      gene.version = std::uniform_int_distribution<int>(0, v_count - 1)(rng);
      gene.node = hosts[std::uniform_int_distribution<std::size_t>(
          0, hosts.size() - 1)(rng)];
    }
  }
  return p;
}

namespace {

struct RawMetrics {
  double total_rt = 0;
  double rs_p = 0;
  double rs_s = 0;
};

RawMetrics raw_metrics(const ScenarioInstance& inst, const Placement& p) {
  return {total_response_time(inst, p), pair_hardware_reliability(inst, p),
          mean_service_reliability(inst, p)};
}

}  // namespace

MogaResult run_moga(const ScenarioInstance& inst, const SolverConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Rng rng(config.seed);
  const int ps = config.ps;
  const int elite = config.effective_elitism();

  std::vector<Placement> population;
  population.reserve(ps);
  for (int i = 0; i < ps; ++i)
    population.push_back(random_placement(inst, rng));

  std::vector<RawMetrics> raw(ps);
  auto evaluate_all = [&] {
    parallel_for(ps, [&](int i) { raw[i] = raw_metrics(inst, population[i]); });
  };
  evaluate_all();

  std::vector<double> totals(ps);
  for (int i = 0; i < ps; ++i) totals[i] = raw[i].total_rt;
  const RtNormalizer frozen = RtNormalizer::fixed_max(
      *std::max_element(totals.begin(), totals.end()));

  MogaResult result;
  double best_fitness = std::numeric_limits<double>::infinity();

  std::vector<double> fits(ps);
  for (int iter = 0; iter < config.it; ++iter) {
    for (int i = 0; i < ps; ++i) totals[i] = raw[i].total_rt;
    const RtNormalizer norm = config.rt_norm == RtNormMode::PerGeneration
                                  ? RtNormalizer::min_max(totals)
                                  : frozen;
    for (int i = 0; i < ps; ++i)
      fits[i] = fitness(norm(raw[i].total_rt), raw[i].rs_p, raw[i].rs_s,
                        config.weights);

    std::vector<int> order(ps);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fits[a] < fits[b]; });
    IterationStats stats;
    stats.best = fits[order.front()];
    stats.median = fits[order[(ps - 1) / 2]];
    stats.worst = fits[order.back()];
    result.history.iterations.push_back(stats);

    if (fits[order.front()] < best_fitness) {
      best_fitness = fits[order.front()];
      result.best = population[order.front()];
    }
    if (iter + 1 == config.it) break;

    std::vector<Placement> next;
    next.reserve(ps);
    for (int e = 0; e < elite; ++e) next.push_back(population[order[e]]);

    std::vector<Placement> offspring;
    offspring.reserve(ps - elite);
    for (int i = 0; i < ps - elite; ++i)
      offspring.push_back(
          population[tournament_select(fits, config.ss, rng)]);

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t i = 0; i + 1 < offspring.size(); i += 2) {
      if (coin(rng) >= config.cr) continue;
      auto [first, second] =
          single_point_crossover(offspring[i], offspring[i + 1], rng);
      offspring[i] = std::move(first);
      offspring[i + 1] = std::move(second);
    }
    for (auto& child : offspring)
      child = insertion_mutation(inst, std::move(child), config.mr, rng);
    for (auto& child : offspring)
      child = heal(inst, std::move(child), rng);

    for (auto& child : offspring) next.push_back(std::move(child));
    population = std::move(next);
    evaluate_all();
  }

  const RtNormalizer report_norm =
      config.rt_norm == RtNormMode::PerGeneration
          ? RtNormalizer::min_max(totals)
          : frozen;
  result.normalizer = report_norm;
  result.report = evaluate(inst, result.best, config.weights, report_norm);
  result.history.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

int estimate_population_size(int x, int y, int n, int m, int k) {
  const double value = std::pow(100.0, 0.9) *
                       std::pow(static_cast<double>(x) * y, 0.16) *
                       std::pow(static_cast<double>(n) + m + k, 0.16);
  return static_cast<int>(std::lround(value));
}

double estimate_crossover_rate(int x, int y, int n, int m, int k) {
  const double c = 0.6 + static_cast<double>(x) * y * 0.0003 +
                   std::pow(static_cast<double>(n) + m + k, 0.04);
  return std::min(c, 0.8);
}

int estimate_iterations(int x, int y, int n, int m, int k) {
  const double value = std::pow(50.0, 0.9) +
                       std::pow(static_cast<double>(x) * y, 0.69) *
                           std::pow(static_cast<double>(n) + m + k, 0.1);
  return static_cast<int>(std::lround(value));
}

}  // namespace placekit
