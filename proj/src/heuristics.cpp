#include "placekit/heuristics.hpp"

#include <algorithm>
#include <numeric>

namespace placekit {

namespace {

struct Demand {
  double cc, mc, dc;
};

Demand demand_of(const VersionSpec& v) { return {v.cr, v.mr, v.dr}; }

class GreedyState {
 public:
  explicit GreedyState(const ScenarioInstance& inst)
      : inst_(inst), y_count_(inst.components_per_service()) {
    placement_.genes.resize(inst.gene_count());
    ledger_.users.resize(inst.user_count());
    ledger_.helpers.resize(inst.helper_count());
    ledger_.compute.resize(inst.compute_count());
  }

  bool fits(NodeId host, const Demand& d) const {
    const auto& usage = ledger_.of(host);
    const NodeSpec& cap = inst_.node(host);
    return usage.cc + d.cc <= cap.cc && usage.mc + d.mc <= cap.mc &&
           usage.dc + d.dc <= cap.dc;
  }

  bool try_place(int x, int y, int version, NodeId host) {
    const Demand d = demand_of(inst_.version(x, y, version));
    if (!fits(host, d)) return false;
    auto& usage = ledger_.of(host);
    usage.cc += d.cc;
    usage.mc += d.mc;
    usage.dc += d.dc;
    placement_.genes[x * y_count_ + y] = Gene{version, host};
    return true;
  }

  Placement take() { return std::move(placement_); }

  const ScenarioInstance& inst() const { return inst_; }

  NodeId user_device(int x) const {
    return NodeId::user(inst_.pairs[inst_.services[x].pair_index].user);
  }
  NodeId helper_device(int x) const {
    return NodeId::helper(inst_.pairs[inst_.services[x].pair_index].helper);
  }

  const std::vector<int>& tier_nodes(Tier tier) const {
    if (tiers_[0].empty() && tiers_[1].empty() && tiers_[2].empty()) {
      for (int k = 0; k < inst_.compute_count(); ++k) {
        switch (inst_.compute[k].tier) {
          case Tier::Tier1: tiers_[0].push_back(k); break;
          case Tier::Tier2: tiers_[1].push_back(k); break;
          case Tier::Tier3: tiers_[2].push_back(k); break;
          default: break;
        }
      }
    }
    switch (tier) {
      case Tier::Tier1: return tiers_[0];
      case Tier::Tier2: return tiers_[1];
      default: return tiers_[2];
    }
  }

 private:
  const ScenarioInstance& inst_;
  int y_count_;
  Placement placement_;
  ResourceLedger ledger_;
  mutable std::array<std::vector<int>, 3> tiers_;
};

[[noreturn]] void fail(int x, int y) {
  throw InfeasibleError("no host fits component " + std::to_string(y) +
                        " of service " + std::to_string(x));
}

// Escalating walk shared by TCA/LRC/MDS: own user device first, then Tier-1
// through Tier-3, trying the given versions in order at every host.
void place_escalating(GreedyState& state, int x, int y,
                      const std::vector<int>& versions) {
  for (int v : versions)
    if (state.try_place(x, y, v, state.user_device(x))) return;
  for (Tier tier : {Tier::Tier1, Tier::Tier2, Tier::Tier3})
    for (int k : state.tier_nodes(tier))
      for (int v : versions)
        if (state.try_place(x, y, v, NodeId::compute(k))) return;
  fail(x, y);
}

std::vector<int> all_versions(const ScenarioInstance& inst) {
  std::vector<int> versions(inst.versions_per_component());
  std::iota(versions.begin(), versions.end(), 0);
  return versions;
}

}  // namespace

Placement tca(const ScenarioInstance& inst) {
  GreedyState state(inst);
  const auto versions = all_versions(inst);
  for (int x = 0; x < inst.service_count(); ++x)
    for (int y = 0; y < inst.components_per_service(); ++y)
      place_escalating(state, x, y, versions);
  return state.take();
}

Placement lrc(const ScenarioInstance& inst) {
  GreedyState state(inst);
  for (int x = 0; x < inst.service_count(); ++x)
    for (int y = 0; y < inst.components_per_service(); ++y) {
      const auto& comp = inst.services[x].components[y];
      int min_cr = 0;
      for (int v = 1; v < static_cast<int>(comp.size()); ++v)
        if (comp[v].cr < comp[min_cr].cr) min_cr = v;
      place_escalating(state, x, y, {min_cr});
    }
  return state.take();
}

Placement mds(const ScenarioInstance& inst) {
  GreedyState state(inst);
  const auto versions = all_versions(inst);
  // Global order: descending version-0 data size, ties by (x, y).
  std::vector<std::pair<int, int>> order;
  for (int x = 0; x < inst.service_count(); ++x)
    for (int y = 0; y < inst.components_per_service(); ++y)
      order.emplace_back(x, y);
  std::stable_sort(order.begin(), order.end(),
                   [&](const auto& a, const auto& b) {
                     return inst.version(a.first, a.second, 0).ds >
                            inst.version(b.first, b.second, 0).ds;
                   });
  for (const auto& [x, y] : order) place_escalating(state, x, y, versions);
  return state.take();
}

Placement mr(const ScenarioInstance& inst) {
  GreedyState state(inst);
  for (int x = 0; x < inst.service_count(); ++x)
    for (int y = 0; y < inst.components_per_service(); ++y) {
      const auto& comp = inst.services[x].components[y];
      std::vector<int> versions = all_versions(inst);
      std::stable_sort(versions.begin(), versions.end(),
                       [&](int a, int b) { return comp[a].rs > comp[b].rs; });
      bool placed = false;
      for (int v : versions) {
        const Demand d = demand_of(comp[v]);
        // Most reliable compute node with room for this version.
        int best_k = -1;
        for (int k = 0; k < inst.compute_count(); ++k)
          if (state.fits(NodeId::compute(k), d) &&
              (best_k < 0 || inst.compute[k].rs > inst.compute[best_k].rs))
            best_k = k;
        // Own-pair devices only outrank a compute node on reliability.
        NodeId host = NodeId::compute(std::max(best_k, 0));
        double host_rs = best_k >= 0 ? inst.compute[best_k].rs : -1.0;
        bool have_host = best_k >= 0;
        for (NodeId device : {state.user_device(x), state.helper_device(x)}) {
          if (inst.node(device).rs > host_rs && state.fits(device, d)) {
            host = device;
            host_rs = inst.node(device).rs;
            have_host = true;
          }
        }
        if (have_host && state.try_place(x, y, v, host)) {
          placed = true;
          break;
        }
      }
      if (!placed) fail(x, y);
    }
  return state.take();
}

namespace {

// Legal hosts ordered by compute capacity; `descending` selects MP vs LP.
std::vector<NodeId> hosts_by_cc(const GreedyState& state, int x,
                                bool descending) {
  std::vector<NodeId> hosts = legal_hosts(state.inst(), x);
  std::stable_sort(hosts.begin(), hosts.end(), [&](NodeId a, NodeId b) {
    const double ca = state.inst().node(a).cc;
    const double cb = state.inst().node(b).cc;
    return descending ? ca > cb : ca < cb;
  });
  return hosts;
}

Placement power_greedy(const ScenarioInstance& inst, bool most_powerful) {
  GreedyState state(inst);
  for (int x = 0; x < inst.service_count(); ++x)
    for (int y = 0; y < inst.components_per_service(); ++y) {
      const auto& comp = inst.services[x].components[y];
      std::vector<int> versions(comp.size());
      std::iota(versions.begin(), versions.end(), 0);
      // MP wants the least demanding version, LP the most demanding.
      std::stable_sort(versions.begin(), versions.end(), [&](int a, int b) {
        return most_powerful ? comp[a].cr < comp[b].cr
                             : comp[a].cr > comp[b].cr;
      });
      const auto hosts = hosts_by_cc(state, x, most_powerful);
      bool placed = false;
      for (int v : versions) {
        for (NodeId host : hosts)
          if (state.try_place(x, y, v, host)) {
            placed = true;
            break;
          }
        if (placed) break;
      }
      if (!placed) fail(x, y);
    }
  return state.take();
}

}  // namespace

Placement mp(const ScenarioInstance& inst) { return power_greedy(inst, true); }

Placement lp(const ScenarioInstance& inst) { return power_greedy(inst, false); }

const std::vector<std::string>& heuristic_names() {
  static const std::vector<std::string> names = {"tca", "lrc", "mds",
                                                 "mr",  "mp",  "lp"};
  return names;
}

Heuristic heuristic_by_name(const std::string& name) {
  if (name == "tca") return tca;
  if (name == "lrc") return lrc;
  if (name == "mds") return mds;
  if (name == "mr") return mr;
  if (name == "mp") return mp;
  if (name == "lp") return lp;
  throw std::invalid_argument("unknown heuristic: " + name);
}

}  // namespace placekit
