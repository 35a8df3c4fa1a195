#include "placekit/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace placekit {

namespace {

struct Usage {
  double cc = 0, mc = 0, dc = 0;
};

class Enumerator {
 public:
  Enumerator(const ScenarioInstance& inst, const FitnessWeights& weights)
      : inst_(inst),
        weights_(weights),
        y_count_(inst.components_per_service()),
        v_count_(inst.versions_per_component()) {
    usage_.users.resize(inst.user_count());
    usage_.helpers.resize(inst.helper_count());
    usage_.compute.resize(inst.compute_count());
    current_.genes.resize(inst.gene_count());
    for (int x = 0; x < inst.service_count(); ++x) {
      auto hosts = legal_hosts(inst, x);
      // Host order matching Gene's comparator, so the first optimum found
      // is the lexicographically smallest one.
      std::sort(hosts.begin(), hosts.end());
      hosts_.push_back(std::move(hosts));
    }
  }

  double search_space() const {
    double space = 1;
    for (int x = 0; x < inst_.service_count(); ++x)
      for (int y = 0; y < y_count_; ++y)
        space *= static_cast<double>(v_count_) * hosts_[x].size();
    return space;
  }

  // Visits every feasible placement once.
  template <typename Leaf>
  void enumerate(Leaf&& leaf) {
    descend(0, leaf);
  }

 private:
  struct Ledger {
    std::vector<Usage> users, helpers, compute;
    Usage& of(NodeId id) {
      switch (id.kind) {
        case NodeKind::User: return users[id.index];
        case NodeKind::Helper: return helpers[id.index];
        case NodeKind::Compute: return compute[id.index];
      }
      throw std::logic_error("bad NodeId kind");
    }
  };

  template <typename Leaf>
  void descend(int g, Leaf&& leaf) {
    if (g == static_cast<int>(current_.genes.size())) {
      leaf(current_);
      return;
    }
    const int x = g / y_count_;
    const int y = g % y_count_;
    for (int v = 0; v < v_count_; ++v) {
      const VersionSpec& version = inst_.version(x, y, v);
      for (NodeId host : hosts_[x]) {
        Usage& usage = usage_.of(host);
        const NodeSpec& cap = inst_.node(host);
        if (usage.cc + version.cr > cap.cc || usage.mc + version.mr > cap.mc ||
            usage.dc + version.dr > cap.dc)
          continue;
        usage.cc += version.cr;
        usage.mc += version.mr;
        usage.dc += version.dr;
        current_.genes[g] = Gene{v, host};
        descend(g + 1, leaf);
        Usage& after = usage_.of(host);
        after.cc -= version.cr;
        after.mc -= version.mr;
        after.dc -= version.dr;
      }
    }
  }

  const ScenarioInstance& inst_;
  const FitnessWeights& weights_;
  int y_count_;
  int v_count_;
  std::vector<std::vector<NodeId>> hosts_;
  Ledger usage_;
  Placement current_;
};

}  // namespace

OracleResult enumerate_optimal(const ScenarioInstance& inst,
                               const FitnessWeights& weights, double cap) {
  Enumerator enumerator(inst, weights);
  const double space = enumerator.search_space();
  if (space > cap)
    throw DomainError("search space " + std::to_string(space) +
                      " exceeds enumeration cap " + std::to_string(cap));

  OracleResult result;
  double max_rt = 0;
  std::uint64_t feasible = 0;
  enumerator.enumerate([&](const Placement& p) {
    ++feasible;
    max_rt = std::max(max_rt, total_response_time(inst, p));
  });
  if (feasible == 0)
    throw InfeasibleError("no feasible placement exists for this instance");

  result.max_rt = max_rt;
  result.normalizer = RtNormalizer::fixed_max(max_rt);
  result.enumerated = feasible;
  double best = std::numeric_limits<double>::infinity();
  enumerator.enumerate([&](const Placement& p) {
    const double rt = total_response_time(inst, p);
    const double f = fitness(result.normalizer(rt),
                             pair_hardware_reliability(inst, p),
                             mean_service_reliability(inst, p), weights);
    if (f < best) {
      best = f;
      result.placement = p;
    }
  });
  result.fitness = best;
  return result;
}

std::vector<ParetoPoint> dominance_oracle(
    const std::vector<ParetoPoint>& points) {
  std::vector<ParetoPoint> front;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool kept = true;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      const bool leq = points[j].best_fitness <= points[i].best_fitness &&
                       points[j].runtime_s <= points[i].runtime_s;
      const bool strict = points[j].best_fitness < points[i].best_fitness ||
                          points[j].runtime_s < points[i].runtime_s;
      if (leq && strict) {
        kept = false;
        break;
      }
      if (points[j].best_fitness == points[i].best_fitness &&
          points[j].runtime_s == points[i].runtime_s &&
          config_hash(points[j].config) < config_hash(points[i].config)) {
        kept = false;
        break;
      }
    }
    if (kept) front.push_back(points[i]);
  }
  std::sort(front.begin(), front.end(),
            [](const ParetoPoint& a, const ParetoPoint& b) {
              if (a.runtime_s != b.runtime_s) return a.runtime_s < b.runtime_s;
              if (a.best_fitness != b.best_fitness)
                return a.best_fitness < b.best_fitness;
              return config_hash(a.config) < config_hash(b.config);
            });
  front.erase(std::unique(front.begin(), front.end(),
                          [](const ParetoPoint& a, const ParetoPoint& b) {
                            return a.best_fitness == b.best_fitness &&
                                   a.runtime_s == b.runtime_s &&
                                   config_hash(a.config) ==
                                       config_hash(b.config);
                          }),
              front.end());
  return front;
}

}  // namespace placekit
