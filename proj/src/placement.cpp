#include "placekit/placement.hpp"

#include <algorithm>
#include <cmath>

namespace placekit {

namespace {

struct Demand {
  double cc, mc, dc;
};

Demand demand_of(const VersionSpec& v) { return {v.cr, v.mr, v.dr}; }

bool fits(const ResourceLedger::Usage& usage, const Demand& d,
          const NodeSpec& cap) {
  return usage.cc + d.cc <= cap.cc && usage.mc + d.mc <= cap.mc &&
         usage.dc + d.dc <= cap.dc;
}

double load_fraction(const ResourceLedger::Usage& usage, const NodeSpec& cap) {
  return std::max({usage.cc / cap.cc, usage.mc / cap.mc, usage.dc / cap.dc});
}

bool overloaded(const ResourceLedger::Usage& usage, const NodeSpec& cap) {
  return usage.cc > cap.cc || usage.mc > cap.mc || usage.dc > cap.dc;
}

}  // namespace

ResourceLedger::Usage& ResourceLedger::of(NodeId id) {
  switch (id.kind) {
    case NodeKind::User: return users[id.index];
    case NodeKind::Helper: return helpers[id.index];
    case NodeKind::Compute: return compute[id.index];
  }
  throw std::logic_error("bad NodeId kind");
}

const ResourceLedger::Usage& ResourceLedger::of(NodeId id) const {
  return const_cast<ResourceLedger*>(this)->of(id);
}

ResourceLedger ResourceLedger::build(const ScenarioInstance& instance,
                                     const Placement& placement) {
  ResourceLedger ledger;
  ledger.users.resize(instance.user_count());
  ledger.helpers.resize(instance.helper_count());
  ledger.compute.resize(instance.compute_count());
  const int y_count = instance.components_per_service();
  for (std::size_t g = 0; g < placement.genes.size(); ++g) {
    const int x = static_cast<int>(g) / y_count;
    const int y = static_cast<int>(g) % y_count;
    const Gene& gene = placement.genes[g];
    const VersionSpec& v = instance.version(x, y, gene.version);
    auto& usage = ledger.of(gene.node);
    usage.cc += v.cr;
    usage.mc += v.mr;
    usage.dc += v.dr;
  }
  return ledger;
}

std::vector<NodeId> legal_hosts(const ScenarioInstance& instance, int x) {
  std::vector<NodeId> hosts;
  hosts.reserve(instance.compute_count() + 2);
  for (int k = 0; k < instance.compute_count(); ++k)
    hosts.push_back(NodeId::compute(k));
  const Pair& pair = instance.pairs[instance.services[x].pair_index];
  hosts.push_back(NodeId::user(pair.user));
  hosts.push_back(NodeId::helper(pair.helper));
  return hosts;
}

std::vector<Violation> check_constraints(const ScenarioInstance& instance,
                                         const Placement& placement) {
  std::vector<Violation> violations;
  const int y_count = instance.components_per_service();

  for (std::size_t g = 0; g < placement.genes.size(); ++g) {
    const int x = static_cast<int>(g) / y_count;
    const auto hosts = legal_hosts(instance, x);
    const NodeId node = placement.genes[g].node;
    if (std::find(hosts.begin(), hosts.end(), node) == hosts.end()) {
      violations.push_back({ViolationKind::Ownership, node,
                            static_cast<int>(g),
                            "component of service " + std::to_string(x) +
                                " placed on foreign host " + to_string(node)});
    }
  }

  const ResourceLedger ledger = ResourceLedger::build(instance, placement);
  auto check_node = [&](NodeId id) {
    const auto& usage = ledger.of(id);
    const NodeSpec& cap = instance.node(id);
    if (overloaded(usage, cap))
      violations.push_back(
          {ViolationKind::Resource, id, -1,
           "resource demand exceeds capacity on " + to_string(id)});
  };
  for (int i = 0; i < instance.compute_count(); ++i)
    check_node(NodeId::compute(i));
  for (int i = 0; i < instance.user_count(); ++i) check_node(NodeId::user(i));
  for (int i = 0; i < instance.helper_count(); ++i)
    check_node(NodeId::helper(i));
  return violations;
}

namespace {

class Healer {
 public:
  Healer(const ScenarioInstance& instance, Placement& placement, Rng& rng)
      : inst_(instance),
        p_(placement),
        rng_(rng),
        ledger_(ResourceLedger::build(instance, placement)),
        y_count_(instance.components_per_service()) {}

  void run() {
    fix_ownership();
    fix_overloads();
  }

 private:
  int service_of(int g) const { return g / y_count_; }
  int component_of(int g) const { return g % y_count_; }

  Demand gene_demand(int g, int version) const {
    return demand_of(
        inst_.version(service_of(g), component_of(g), version));
  }

  bool host_is_legal(int g, NodeId node) const {
    const auto hosts = legal_hosts(inst_, service_of(g));
    return std::find(hosts.begin(), hosts.end(), node) != hosts.end();
  }

  // Least-loaded legal host (excluding `exclude`) that fits `d`; ties break
  // on legal-host order (compute by index, then user, then helper).
  std::optional<NodeId> best_host(int g, const Demand& d, NodeId exclude) {
    std::optional<NodeId> best;
    double best_load = 0;
    for (NodeId host : legal_hosts(inst_, service_of(g))) {
      if (host == exclude) continue;
      const NodeSpec& cap = inst_.node(host);
      if (!fits(ledger_.of(host), d, cap)) continue;
      const double load = load_fraction(ledger_.of(host), cap);
      if (!best || load < best_load) {
        best = host;
        best_load = load;
      }
    }
    return best;
  }

  // Moves gene g off `from` (already deducted by the caller). Keeps its
  // version when possible, otherwise re-draws among versions that fit.
  void relocate(int g, NodeId from) {
    Gene& gene = p_.genes[g];
    if (auto host = best_host(g, gene_demand(g, gene.version), from)) {
      place(g, gene.version, *host);
      return;
    }
    const int v_count =
        static_cast<int>(inst_.services[service_of(g)]
                             .components[component_of(g)]
                             .size());
    std::vector<int> fitting;
    for (int v = 0; v < v_count; ++v) {
      if (v == gene.version) continue;
      if (best_host(g, gene_demand(g, v), from)) fitting.push_back(v);
    }
    if (fitting.empty())
      throw InfeasibleError(
          "no feasible host/version for component " +
          std::to_string(component_of(g)) + " of service " +
          std::to_string(service_of(g)));
    const int v = fitting[std::uniform_int_distribution<std::size_t>(
        0, fitting.size() - 1)(rng_)];
    place(g, v, *best_host(g, gene_demand(g, v), from));
  }

  void place(int g, int version, NodeId host) {
    Gene& gene = p_.genes[g];
    gene.version = version;
    gene.node = host;
    const Demand d = gene_demand(g, version);
    auto& usage = ledger_.of(host);
    usage.cc += d.cc;
    usage.mc += d.mc;
    usage.dc += d.dc;
  }

  void deduct(int g) {
    const Gene& gene = p_.genes[g];
    const Demand d = gene_demand(g, gene.version);
    auto& usage = ledger_.of(gene.node);
    usage.cc -= d.cc;
    usage.mc -= d.mc;
    usage.dc -= d.dc;
  }

  void fix_ownership() {
    for (std::size_t g = 0; g < p_.genes.size(); ++g) {
      const NodeId node = p_.genes[g].node;
      if (host_is_legal(static_cast<int>(g), node)) continue;
      deduct(static_cast<int>(g));
      relocate(static_cast<int>(g), node);
    }
  }

  void fix_overloads() {
    auto fix_node = [&](NodeId id) {
      const NodeSpec& cap = inst_.node(id);
      if (!overloaded(ledger_.of(id), cap)) return;
      // Genes on this node, descending cc-demand, then gene index.
      std::vector<int> resident;
      for (std::size_t g = 0; g < p_.genes.size(); ++g)
        if (p_.genes[g].node == id) resident.push_back(static_cast<int>(g));
      std::stable_sort(resident.begin(), resident.end(), [&](int a, int b) {
        return gene_demand(a, p_.genes[a].version).cc >
               gene_demand(b, p_.genes[b].version).cc;
      });
      for (int g : resident) {
        if (!overloaded(ledger_.of(id), cap)) return;
        deduct(g);
        try {
          relocate(g, id);
        } catch (const InfeasibleError&) {
          place(g, p_.genes[g].version, id);  // leave it, try the next gene
        }
      }
      if (overloaded(ledger_.of(id), cap))
        throw InfeasibleError("cannot resolve overload on " + to_string(id));
    };
    for (int i = 0; i < inst_.compute_count(); ++i)
      fix_node(NodeId::compute(i));
    for (int i = 0; i < inst_.user_count(); ++i) fix_node(NodeId::user(i));
    for (int i = 0; i < inst_.helper_count(); ++i) fix_node(NodeId::helper(i));
  }

  const ScenarioInstance& inst_;
  Placement& p_;
  Rng& rng_;
  ResourceLedger ledger_;
  int y_count_;
};

}  // namespace

Placement heal(const ScenarioInstance& instance, Placement placement,
               Rng& rng) {
  Healer healer(instance, placement, rng);
  healer.run();
  return placement;
}

Placement random_placement(const ScenarioInstance& instance, Rng& rng) {
  Placement placement;
  placement.genes.resize(instance.gene_count());
  const int y_count = instance.components_per_service();
  const int v_count = instance.versions_per_component();
  for (int x = 0; x < instance.service_count(); ++x) {
    const auto hosts = legal_hosts(instance, x);
    for (int y = 0; y < y_count; ++y) {
      Gene& gene = placement.genes[x * y_count + y];
      gene.version = std::uniform_int_distribution<int>(0, v_count - 1)(rng);
      gene.node = hosts[std::uniform_int_distribution<std::size_t>(
          0, hosts.size() - 1)(rng)];
    }
  }
  return heal(instance, std::move(placement), rng);
}

Placement pin_endpoints(const ScenarioInstance& instance, Placement placement,
                        Rng& rng) {
  const int y_count = instance.components_per_service();
  if (y_count == 0) return placement;
  for (int x = 0; x < instance.service_count(); ++x) {
    const Pair& pair = instance.pairs[instance.services[x].pair_index];
    placement.at(x, 0, y_count).node = NodeId::user(pair.user);
    placement.at(x, y_count - 1, y_count).node = NodeId::helper(pair.helper);
  }
  return heal(instance, std::move(placement), rng);
}

}  // namespace placekit
