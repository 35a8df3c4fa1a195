#include "placekit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace placekit {

void FitnessWeights::validate() const {
  for (double w : {w1, w2, w3})
    if (w < 0 || w > 1) throw DomainError("fitness weights must be in [0,1]");
  if (std::abs(w1 + w2 + w3 - 1.0) > 1e-9)
    throw DomainError("fitness weights must sum to 1");
}

double RtNormalizer::operator()(double rt) const {
  if (hi <= lo) return 0.0;
  return std::clamp((rt - lo) / (hi - lo), 0.0, 1.0);
}

RtNormalizer RtNormalizer::min_max(std::span<const double> totals) {
  if (totals.empty()) return {0.0, 0.0};
  const auto [lo, hi] = std::minmax_element(totals.begin(), totals.end());
  return {*lo, *hi};
}

double transmission_delay(double ds_mb, double bw_mbps, double rtt_s) {
  if (!(bw_mbps > 0)) throw DomainError("bandwidth must be > 0");
  return ds_mb / bw_mbps + rtt_s / 2.0;
}

double execution_time(double cr_mi, double cc_mips, double wait_s) {
  if (!(cc_mips > 0)) throw DomainError("compute capacity must be > 0");
  return cr_mi / cc_mips + wait_s;
}

namespace {

double link_delay(const ScenarioInstance& inst, NodeId a, NodeId b,
                  double ds_mb) {
  if (a == b) return 0.0;
  if (a.kind == NodeKind::Compute || b.kind == NodeKind::Compute) {
    const LinkChar link = link_lookup(inst, a, b);
    return transmission_delay(ds_mb, link.bw_mbps, link.rtt_s);
  }
  // User and helper devices have no direct link; data is relayed through
  // the cloud. Take the cheapest Tier-3 relay (any compute node if the
  // scenario has no Tier-3).
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](int k) {
    const NodeId relay = NodeId::compute(k);
    try {
      const LinkChar first = link_lookup(inst, a, relay);
      const LinkChar second = link_lookup(inst, relay, b);
      const double delay =
          transmission_delay(ds_mb, first.bw_mbps, first.rtt_s) +
          transmission_delay(ds_mb, second.bw_mbps, second.rtt_s);
      best = std::min(best, delay);
    } catch (const TopologyError&) {
    }
  };
  bool any_tier3 = false;
  for (int k = 0; k < inst.compute_count(); ++k)
    if (inst.compute[k].tier == Tier::Tier3) {
      any_tier3 = true;
      consider(k);
    }
  if (!any_tier3)
    for (int k = 0; k < inst.compute_count(); ++k) consider(k);
  if (!std::isfinite(best))
    throw TopologyError("no relay path between " + to_string(a) + " and " +
                        to_string(b));
  return best;
}

double waiting_time(const ScenarioInstance& inst, const Placement& placement,
                    int gene_index, const VersionSpec& version,
                    const ContentionModel& contention) {
  if (!contention.thread_capacity) return 0.0;
  const NodeId node = placement.genes[gene_index].node;
  int queued = 0;
  for (int g = 0; g < gene_index; ++g)
    if (placement.genes[g].node == node) ++queued;
  const int over = queued - *contention.thread_capacity;
  if (over <= 0) return 0.0;
  return over * version.cr / inst.node(node).cc;
}

}  // namespace

double component_response_time(const ScenarioInstance& inst,
                               const Placement& placement, int x, int y,
                               const ContentionModel& contention) {
  const int y_count = inst.components_per_service();
  const Gene& gene = placement.at(x, y, y_count);
  const VersionSpec& version = inst.version(x, y, gene.version);

  double td = 0;
  const ServiceSpec& svc = inst.services[x];
  for (int z = y + 1; z < y_count; ++z) {
    if (!svc.dag[y][z]) continue;
    td += link_delay(inst, gene.node, placement.at(x, z, y_count).node,
                     version.ds);
  }
  const double wait =
      waiting_time(inst, placement, x * y_count + y, version, contention);
  const double et = execution_time(version.cr, inst.node(gene.node).cc, wait);
  return td + et + version.provider_delay + version.coding_delay;
}

double service_response_time(const ScenarioInstance& inst,
                             const Placement& placement, int x,
                             const ContentionModel& contention) {
  double total = 0;
  for (int y = 0; y < inst.components_per_service(); ++y)
    total += component_response_time(inst, placement, x, y, contention);
  return total;
}

double total_response_time(const ScenarioInstance& inst,
                           const Placement& placement,
                           const ContentionModel& contention) {
  double total = 0;
  for (int x = 0; x < inst.service_count(); ++x)
    total += service_response_time(inst, placement, x, contention);
  return total;
}

double service_reliability(const ScenarioInstance& inst,
                           const Placement& placement, int x) {
  const int y_count = inst.components_per_service();
  double product = 1.0;
  for (int y = 0; y < y_count; ++y)
    product *= inst.version(x, y, placement.at(x, y, y_count).version).rs;
  return product;
}

double mean_service_reliability(const ScenarioInstance& inst,
                                const Placement& placement) {
  const int x_count = inst.service_count();
  if (x_count == 0) return 1.0;
  double sum = 0;
  for (int x = 0; x < x_count; ++x)
    sum += service_reliability(inst, placement, x);
  return sum / x_count;
}

double infrastructure_reliability(const ScenarioInstance& inst,
                                  const Placement& placement,
                                  ReliabilityScope scope) {
  std::set<int> used;
  if (scope == ReliabilityScope::All) {
    for (int k = 0; k < inst.compute_count(); ++k) used.insert(k);
  } else {
    for (const Gene& gene : placement.genes)
      if (gene.node.kind == NodeKind::Compute) used.insert(gene.node.index);
  }
  if (used.empty()) return 1.0;  // no compute hardware in the loop
  double failure = 1.0;
  for (int k : used) failure *= 1.0 - inst.compute[k].rs;
  return 1.0 - failure;
}

namespace {

double mean_rs(const std::vector<NodeSpec>& nodes) {
  if (nodes.empty()) return 1.0;
  double sum = 0;
  for (const auto& node : nodes) sum += node.rs;
  return sum / nodes.size();
}

}  // namespace

double pair_hardware_reliability(const ScenarioInstance& inst,
                                 const Placement& placement,
                                 ReliabilityScope scope) {
  return infrastructure_reliability(inst, placement, scope) *
         mean_rs(inst.users) * mean_rs(inst.helpers);
}

double fitness(double normalized_rt, double rs_p, double rs_s,
               const FitnessWeights& weights) {
  weights.validate();
  if (normalized_rt < 0 || normalized_rt > 1)
    throw DomainError("normalized response time outside [0,1]");
  return weights.w1 * normalized_rt + weights.w2 * (1.0 - rs_p) +
         weights.w3 * (1.0 - rs_s);
}

EvaluationReport evaluate(const ScenarioInstance& inst,
                          const Placement& placement,
                          const FitnessWeights& weights,
                          const RtNormalizer& normalizer,
                          const ContentionModel& contention,
                          ReliabilityScope scope) {
  EvaluationReport report;
  report.per_service_rt.reserve(inst.service_count());
  for (int x = 0; x < inst.service_count(); ++x)
    report.per_service_rt.push_back(
        service_response_time(inst, placement, x, contention));
  for (double rt : report.per_service_rt) report.total_rt += rt;
  report.infra_reliability =
      infrastructure_reliability(inst, placement, scope);
  report.pair_reliability = pair_hardware_reliability(inst, placement, scope);
  report.service_reliability = mean_service_reliability(inst, placement);
  report.normalized_rt = normalizer(report.total_rt);
  report.fitness = fitness(report.normalized_rt, report.pair_reliability,
                           report.service_reliability, weights);
  return report;
}

}  // namespace placekit
