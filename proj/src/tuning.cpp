#include "placekit/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace placekit {

GridSpec GridSpec::defaults() {
  GridSpec grid;
  grid.ps = {50, 100, 200, 300};
  grid.elitism_rate = {0.01, 0.02, 0.05};
  grid.cr = {0.5, 0.6, 0.7, 0.8};
  grid.mr = {0.005, 0.01, 0.02};
  return grid;
}

std::vector<ParetoPoint> grid_search(const ScenarioInstance& instance,
                                     const GridSpec& grid,
                                     const SolverConfig& base, int repeats,
                                     std::uint64_t seed) {
  if (grid.ps.empty() || grid.elitism_rate.empty() || grid.cr.empty() ||
      grid.mr.empty())
    throw DomainError("tuning grid must have at least one value per axis");
  if (repeats < 1) throw DomainError("repeats must be >= 1");

  std::vector<ParetoPoint> points;
  for (int ps : grid.ps)
    for (double elitism : grid.elitism_rate)
      for (double cr : grid.cr)
        for (double mr : grid.mr) {
          SolverConfig config = base;
          config.ps = ps;
          config.elitism_count =
              std::max(1, static_cast<int>(std::lround(elitism * ps)));
          config.cr = cr;
          config.mr = mr;
          config.ss = std::min(config.ss, ps);
          double fitness_sum = 0;
          double runtime_sum = 0;
          for (int r = 0; r < repeats; ++r) {
            config.seed = seed + static_cast<std::uint64_t>(r);
            const MogaResult result = run_moga(instance, config);
            fitness_sum += result.report.fitness;
            runtime_sum += result.history.runtime_s;
          }
          points.push_back({config, fitness_sum / repeats,
                            runtime_sum / repeats});
        }
  return points;
}

std::uint64_t config_hash(const SolverConfig& config) {
  // FNV-1a over the tunable parameters.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      h ^= (value >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  auto mix_double = [&](double value) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(value));
    std::memcpy(&bits, &value, sizeof(bits));
    mix(bits);
  };
  mix(static_cast<std::uint64_t>(config.ps));
  mix(static_cast<std::uint64_t>(config.effective_elitism()));
  mix_double(config.cr);
  mix_double(config.mr);
  mix(static_cast<std::uint64_t>(config.ss));
  mix(static_cast<std::uint64_t>(config.it));
  return h;
}

namespace {

bool dominates(const ParetoPoint& a, const ParetoPoint& b) {
  return a.best_fitness <= b.best_fitness && a.runtime_s <= b.runtime_s &&
         (a.best_fitness < b.best_fitness || a.runtime_s < b.runtime_s);
}

bool same_coords(const ParetoPoint& a, const ParetoPoint& b) {
  return a.best_fitness == b.best_fitness && a.runtime_s == b.runtime_s;
}

}  // namespace

std::vector<ParetoPoint> pareto_front(const std::vector<ParetoPoint>& points) {
  std::vector<ParetoPoint> front;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < points.size() && keep; ++j) {
      if (i == j) continue;
      if (dominates(points[j], points[i])) keep = false;
      if (same_coords(points[j], points[i]) &&
          config_hash(points[j].config) < config_hash(points[i].config))
        keep = false;
    }
    if (keep) front.push_back(points[i]);
  }
  std::stable_sort(front.begin(), front.end(),
                   [](const ParetoPoint& a, const ParetoPoint& b) {
                     if (a.runtime_s != b.runtime_s)
                       return a.runtime_s < b.runtime_s;
                     if (a.best_fitness != b.best_fitness)
                       return a.best_fitness < b.best_fitness;
                     return config_hash(a.config) < config_hash(b.config);
                   });
  // Identical coordinates and identical hash collapse to one entry.
  front.erase(std::unique(front.begin(), front.end(),
                          [](const ParetoPoint& a, const ParetoPoint& b) {
                            return same_coords(a, b) &&
                                   config_hash(a.config) ==
                                       config_hash(b.config);
                          }),
              front.end());
  return front;
}

namespace {

template <typename T, typename Get>
T median_of(const std::vector<ParetoPoint>& front, Get get) {
  std::vector<T> values;
  values.reserve(front.size());
  for (const auto& p : front) values.push_back(get(p));
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];  // lower median on even counts
}

}  // namespace

SolverConfig select_config(const std::vector<ParetoPoint>& front) {
  if (front.empty()) throw DomainError("empty Pareto front");
  SolverConfig config = front.front().config;
  config.ps = median_of<int>(front, [](const ParetoPoint& p) {
    return p.config.ps;
  });
  config.cr = median_of<double>(front, [](const ParetoPoint& p) {
    return p.config.cr;
  });
  config.mr = median_of<double>(front, [](const ParetoPoint& p) {
    return p.config.mr;
  });
  config.elitism_count = median_of<int>(front, [](const ParetoPoint& p) {
    return p.config.effective_elitism();
  });
  config.ss = std::min(config.ss, config.ps);
  return config;
}

FormulaResiduals formula_residuals(int x, int y, int n, int m, int k,
                                   const SolverConfig& selected) {
  FormulaResiduals out;
  out.ps.predicted = estimate_population_size(x, y, n, m, k);
  out.ps.selected = selected.ps;
  out.it.predicted = estimate_iterations(x, y, n, m, k);
  out.it.selected = selected.it;
  out.cr.predicted = estimate_crossover_rate(x, y, n, m, k);
  out.cr.selected = selected.cr;
  for (FormulaResidual* r : {&out.ps, &out.it, &out.cr})
    r->relative_error =
        r->selected == 0 ? 0
                         : std::abs(r->predicted - r->selected) /
                               std::abs(r->selected);
  return out;
}

}  // namespace placekit
