#include "placekit/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace placekit {

using nlohmann::json;

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::User: return "user";
    case NodeKind::Helper: return "helper";
    case NodeKind::Compute: return "compute";
  }
  return "?";
}

const char* to_string(Tier tier) {
  switch (tier) {
    case Tier::UserDevice: return "user_device";
    case Tier::HelperDevice: return "helper_device";
    case Tier::Tier1: return "tier1";
    case Tier::Tier2: return "tier2";
    case Tier::Tier3: return "tier3";
  }
  return "?";
}

std::string to_string(NodeId id) {
  return std::string(to_string(id.kind)) + "#" + std::to_string(id.index);
}

int LinkTable::column_of(NodeId id) const {
  switch (id.kind) {
    case NodeKind::Compute: return id.index;
    case NodeKind::User: return k + id.index;
    case NodeKind::Helper: return k + n + id.index;
  }
  return -1;
}

const NodeSpec& ScenarioInstance::node(NodeId id) const {
  switch (id.kind) {
    case NodeKind::User: return users[id.index];
    case NodeKind::Helper: return helpers[id.index];
    case NodeKind::Compute: return compute[id.index];
  }
  throw std::logic_error("bad NodeId kind");
}

namespace {

class IssueCollector {
 public:
  void add(std::string path, std::string message) {
    issues_.push_back({std::move(path), std::move(message)});
  }
  void raise_if_any() {
    if (!issues_.empty()) throw ValidationError(std::move(issues_));
  }
  bool empty() const { return issues_.empty(); }

 private:
  std::vector<ValidationIssue> issues_;
};

double require_number(const json& obj, const std::string& path,
                      const char* key, IssueCollector& issues) {
  if (!obj.contains(key)) {
    issues.add(path + "." + key, "missing required field");
    return 0;
  }
  if (!obj[key].is_number()) {
    issues.add(path + "." + key, "expected a number");
    return 0;
  }
  return obj[key].get<double>();
}

std::string require_string(const json& obj, const std::string& path,
                           const char* key, IssueCollector& issues) {
  if (!obj.contains(key)) {
    issues.add(path + "." + key, "missing required field");
    return {};
  }
  if (!obj[key].is_string()) {
    issues.add(path + "." + key, "expected a string");
    return {};
  }
  return obj[key].get<std::string>();
}

Tier tier_from_label(const std::string& label, const std::string& path,
                     IssueCollector& issues) {
  if (label == "tier1") return Tier::Tier1;
  if (label == "tier2") return Tier::Tier2;
  if (label == "tier3") return Tier::Tier3;
  issues.add(path, "unknown tier label '" + label +
                       "' (expected tier1|tier2|tier3)");
  return Tier::Tier1;
}

NodeSpec parse_node(const json& obj, const std::string& path, Tier dflt,
                    bool want_tier, IssueCollector& issues) {
  NodeSpec node;
  if (!obj.is_object()) {
    issues.add(path, "expected an object");
    return node;
  }
  node.cc = require_number(obj, path, "cc", issues);
  node.mc = require_number(obj, path, "mc", issues);
  node.dc = require_number(obj, path, "dc", issues);
  node.os = require_string(obj, path, "os", issues);
  node.rs = require_number(obj, path, "rs", issues);
  node.tier = dflt;
  if (want_tier) {
    node.tier = tier_from_label(require_string(obj, path, "tier", issues),
                                path + ".tier", issues);
  }
  return node;
}

VersionSpec parse_version(const json& obj, const std::string& path,
                          IssueCollector& issues) {
  VersionSpec v;
  if (!obj.is_object()) {
    issues.add(path, "expected an object");
    return v;
  }
  v.cr = require_number(obj, path, "cr", issues);
  v.mr = require_number(obj, path, "mr", issues);
  v.dr = require_number(obj, path, "dr", issues);
  v.ds = require_number(obj, path, "ds", issues);
  v.pr = require_string(obj, path, "pr", issues);
  v.tc = require_string(obj, path, "tc", issues);
  v.ct = require_string(obj, path, "ct", issues);
  v.rs = require_number(obj, path, "rs", issues);
  v.provider_delay = require_number(obj, path, "provider_delay", issues);
  v.coding_delay = require_number(obj, path, "coding_delay", issues);
  return v;
}

void check_node(const NodeSpec& node, const std::string& path,
                IssueCollector& issues) {
  if (node.cc <= 0) issues.add(path + ".cc", "must be > 0");
  if (node.mc <= 0) issues.add(path + ".mc", "must be > 0");
  if (node.dc <= 0) issues.add(path + ".dc", "must be > 0");
  if (node.rs <= 0 || node.rs > 1) issues.add(path + ".rs", "must be in (0,1]");
}

void check_version(const VersionSpec& v, const std::string& path,
                   IssueCollector& issues) {
  if (v.cr <= 0) issues.add(path + ".cr", "must be > 0");
  if (v.mr <= 0) issues.add(path + ".mr", "must be > 0");
  if (v.dr <= 0) issues.add(path + ".dr", "must be > 0");
  if (v.ds <= 0) issues.add(path + ".ds", "must be > 0");
  if (v.rs <= 0 || v.rs > 1) issues.add(path + ".rs", "must be in (0,1]");
  if (v.provider_delay < 0) issues.add(path + ".provider_delay", "must be >= 0");
  if (v.coding_delay < 0) issues.add(path + ".coding_delay", "must be >= 0");
}

bool is_compute_self(const LinkTable& t, int row, int col) {
  return col < t.k && col == row;
}

void semantic_checks(const ScenarioInstance& inst, IssueCollector& issues) {
  const int n = inst.user_count();
  const int m = inst.helper_count();
  const int k = inst.compute_count();

  for (int i = 0; i < n; ++i)
    check_node(inst.users[i], "users[" + std::to_string(i) + "]", issues);
  for (int i = 0; i < m; ++i)
    check_node(inst.helpers[i], "helpers[" + std::to_string(i) + "]", issues);
  for (int i = 0; i < k; ++i) {
    const std::string path = "compute_nodes[" + std::to_string(i) + "]";
    check_node(inst.compute[i], path, issues);
    if (inst.compute[i].tier != Tier::Tier1 &&
        inst.compute[i].tier != Tier::Tier2 &&
        inst.compute[i].tier != Tier::Tier3)
      issues.add(path + ".tier", "compute node must be tier1|tier2|tier3");
  }

  if (inst.service_count() != static_cast<int>(inst.pairs.size()))
    issues.add("services", "number of services must equal number of pairs");

  for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
    const std::string path = "pairs[" + std::to_string(i) + "]";
    if (inst.pairs[i].user < 0 || inst.pairs[i].user >= n)
      issues.add(path + ".user", "user index out of range");
    if (inst.pairs[i].helper < 0 || inst.pairs[i].helper >= m)
      issues.add(path + ".helper", "helper index out of range");
  }

  int expected_y = -1;
  int expected_v = -1;
  for (int x = 0; x < inst.service_count(); ++x) {
    const std::string path = "services[" + std::to_string(x) + "]";
    const ServiceSpec& svc = inst.services[x];
    if (svc.pair_index < 0 ||
        svc.pair_index >= static_cast<int>(inst.pairs.size()))
      issues.add(path + ".pair", "pair index out of range");
    const int y_count = svc.component_count();
    if (expected_y < 0) expected_y = y_count;
    if (y_count != expected_y)
      issues.add(path + ".components",
                 "all services must have the same component count");
    for (int y = 0; y < y_count; ++y) {
      const std::string cpath =
          path + ".components[" + std::to_string(y) + "]";
      const int v_count = static_cast<int>(svc.components[y].size());
      if (v_count == 0) issues.add(cpath, "component has no versions");
      if (expected_v < 0 && v_count > 0) expected_v = v_count;
      if (expected_v >= 0 && v_count != expected_v)
        issues.add(cpath, "all components must have the same version count");
      for (int v = 0; v < v_count; ++v)
        check_version(svc.components[y][v],
                      cpath + "[" + std::to_string(v) + "]", issues);
    }
    if (static_cast<int>(svc.dag.size()) != y_count) {
      issues.add(path + ".dag", "dag must be a YxY matrix");
    } else {
      for (int y = 0; y < y_count; ++y) {
        const std::string rpath = path + ".dag[" + std::to_string(y) + "]";
        if (static_cast<int>(svc.dag[y].size()) != y_count) {
          issues.add(rpath, "dag row has wrong length");
          continue;
        }
        for (int z = 0; z < y_count; ++z) {
          if (svc.dag[y][z] != 0 && svc.dag[y][z] != 1)
            issues.add(rpath + "[" + std::to_string(z) + "]",
                       "dag entries must be 0 or 1");
          if (y >= z && svc.dag[y][z] != 0)
            issues.add(rpath + "[" + std::to_string(z) + "]",
                       "dag must be strictly upper-triangular");
        }
      }
    }
  }

  const LinkTable& t = inst.links;
  if (t.k != k || t.n != n || t.m != m ||
      static_cast<int>(t.entries.size()) != t.k * t.cols()) {
    issues.add("links", "table shape must be K x (K+N+M)");
    return;
  }
  for (int row = 0; row < t.k; ++row) {
    for (int col = 0; col < t.cols(); ++col) {
      const auto& e = t.at(row, col);
      const std::string path =
          "links[" + std::to_string(row * t.cols() + col) + "]";
      if (is_compute_self(t, row, col)) continue;  // sentinel slot
      if (!e.has_value()) continue;                // forbidden pair
      if (!(e->bw_mbps > 0)) issues.add(path, "bandwidth must be > 0");
      if (e->rtt_s < 0) issues.add(path, "rtt must be >= 0");
      if (col < t.k) {
        const auto& mirror = t.at(col, row);
        if (!mirror.has_value() || mirror->bw_mbps != e->bw_mbps ||
            mirror->rtt_s != e->rtt_s)
          issues.add(path, "compute-compute links must be symmetric");
      }
    }
  }
}

}  // namespace

void validate_instance(const ScenarioInstance& instance) {
  IssueCollector issues;
  semantic_checks(instance, issues);
  issues.raise_if_any();
}

ScenarioInstance load_scenario(const json& document) {
  IssueCollector issues;
  if (!document.is_object()) {
    issues.add("", "scenario document must be a JSON object");
    issues.raise_if_any();
  }
  for (const char* key :
       {"users", "helpers", "compute_nodes", "pairs", "services", "links"}) {
    if (!document.contains(key))
      issues.add(key, "missing required field");
    else if (!document[key].is_array())
      issues.add(key, "expected an array");
  }
  issues.raise_if_any();

  ScenarioInstance inst;
  const json& users = document["users"];
  for (std::size_t i = 0; i < users.size(); ++i)
    inst.users.push_back(parse_node(users[i],
                                    "users[" + std::to_string(i) + "]",
                                    Tier::UserDevice, false, issues));
  const json& helpers = document["helpers"];
  for (std::size_t i = 0; i < helpers.size(); ++i)
    inst.helpers.push_back(parse_node(helpers[i],
                                      "helpers[" + std::to_string(i) + "]",
                                      Tier::HelperDevice, false, issues));
  const json& compute = document["compute_nodes"];
  for (std::size_t i = 0; i < compute.size(); ++i)
    inst.compute.push_back(
        parse_node(compute[i], "compute_nodes[" + std::to_string(i) + "]",
                   Tier::Tier1, true, issues));

  const json& pairs = document["pairs"];
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string path = "pairs[" + std::to_string(i) + "]";
    Pair p;
    if (!pairs[i].is_object()) {
      issues.add(path, "expected an object");
    } else {
      p.user = static_cast<int>(require_number(pairs[i], path, "user", issues));
      p.helper =
          static_cast<int>(require_number(pairs[i], path, "helper", issues));
    }
    inst.pairs.push_back(p);
  }

  const json& services = document["services"];
  for (std::size_t x = 0; x < services.size(); ++x) {
    const std::string path = "services[" + std::to_string(x) + "]";
    ServiceSpec svc;
    if (!services[x].is_object()) {
      issues.add(path, "expected an object");
      inst.services.push_back(svc);
      continue;
    }
    svc.pair_index =
        static_cast<int>(require_number(services[x], path, "pair", issues));
    if (!services[x].contains("components") ||
        !services[x]["components"].is_array()) {
      issues.add(path + ".components", "expected an array of arrays");
    } else {
      const json& comps = services[x]["components"];
      for (std::size_t y = 0; y < comps.size(); ++y) {
        const std::string cpath =
            path + ".components[" + std::to_string(y) + "]";
        std::vector<VersionSpec> versions;
        if (!comps[y].is_array()) {
          issues.add(cpath, "expected an array of versions");
        } else {
          for (std::size_t v = 0; v < comps[y].size(); ++v)
            versions.push_back(parse_version(
                comps[y][v], cpath + "[" + std::to_string(v) + "]", issues));
        }
        svc.components.push_back(std::move(versions));
      }
    }
    if (!services[x].contains("dag") || !services[x]["dag"].is_array()) {
      issues.add(path + ".dag", "expected a YxY 0/1 matrix");
    } else {
      for (const auto& row : services[x]["dag"]) {
        std::vector<std::uint8_t> r;
        if (row.is_array()) {
          for (const auto& cell : row)
            r.push_back(cell.is_number()
                            ? static_cast<std::uint8_t>(cell.get<int>())
                            : std::uint8_t{255});
        }
        svc.dag.push_back(std::move(r));
      }
    }
    inst.services.push_back(std::move(svc));
  }

  LinkTable& t = inst.links;
  t.k = inst.compute_count();
  t.n = inst.user_count();
  t.m = inst.helper_count();
  const json& links = document["links"];
  const std::size_t want = static_cast<std::size_t>(t.k) * t.cols();
  if (links.size() != want) {
    issues.add("links", "expected " + std::to_string(want) +
                            " entries, got " + std::to_string(links.size()));
  } else {
    t.entries.resize(want);
    for (std::size_t i = 0; i < want; ++i) {
      const std::string path = "links[" + std::to_string(i) + "]";
      const json& e = links[i];
      const int row = static_cast<int>(i) / t.cols();
      const int col = static_cast<int>(i) % t.cols();
      if (e.is_null()) {
        t.entries[i] = std::nullopt;
        continue;
      }
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number()) {
        issues.add(path, "expected [bw_mbps, rtt_ms] or null");
        continue;
      }
      if (is_compute_self(t, row, col)) {
        t.entries[i] = self_link();  // <0,0> diagonal reads as zero delay
      } else {
        // rtt arrives in milliseconds; canonicalize to seconds.
        t.entries[i] = LinkChar{e[0].get<double>(), e[1].get<double>() / 1e3};
      }
    }
  }
  issues.raise_if_any();

  semantic_checks(inst, issues);
  issues.raise_if_any();
  return inst;
}

ScenarioInstance load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError("", std::string("JSON parse error: ") + e.what());
  }
  return load_scenario(doc);
}

namespace {

json node_to_json(const NodeSpec& node, bool with_tier) {
  json obj = {{"cc", node.cc}, {"mc", node.mc}, {"dc", node.dc},
              {"os", node.os}, {"rs", node.rs}};
  if (with_tier) obj["tier"] = to_string(node.tier);
  return obj;
}

}  // namespace

json save_scenario(const ScenarioInstance& inst) {
  json doc;
  doc["users"] = json::array();
  for (const auto& u : inst.users) doc["users"].push_back(node_to_json(u, false));
  doc["helpers"] = json::array();
  for (const auto& h : inst.helpers)
    doc["helpers"].push_back(node_to_json(h, false));
  doc["compute_nodes"] = json::array();
  for (const auto& c : inst.compute)
    doc["compute_nodes"].push_back(node_to_json(c, true));
  doc["pairs"] = json::array();
  for (const auto& p : inst.pairs)
    doc["pairs"].push_back({{"user", p.user}, {"helper", p.helper}});
  doc["services"] = json::array();
  for (const auto& svc : inst.services) {
    json comps = json::array();
    for (const auto& comp : svc.components) {
      json versions = json::array();
      for (const auto& v : comp)
        versions.push_back({{"cr", v.cr},
                            {"mr", v.mr},
                            {"dr", v.dr},
                            {"ds", v.ds},
                            {"pr", v.pr},
                            {"tc", v.tc},
                            {"ct", v.ct},
                            {"rs", v.rs},
                            {"provider_delay", v.provider_delay},
                            {"coding_delay", v.coding_delay}});
      comps.push_back(std::move(versions));
    }
    json dag = json::array();
    for (const auto& row : svc.dag) {
      json r = json::array();
      for (auto cell : row) r.push_back(static_cast<int>(cell));
      dag.push_back(std::move(r));
    }
    doc["services"].push_back({{"pair", svc.pair_index},
                               {"components", std::move(comps)},
                               {"dag", std::move(dag)}});
  }
  json links = json::array();
  const LinkTable& t = inst.links;
  for (int row = 0; row < t.k; ++row) {
    for (int col = 0; col < t.cols(); ++col) {
      if (is_compute_self(t, row, col)) {
        links.push_back({0.0, 0.0});
      } else if (const auto& e = t.at(row, col)) {
        links.push_back({e->bw_mbps, e->rtt_s * 1e3});
      } else {
        links.push_back(nullptr);
      }
    }
  }
  doc["links"] = std::move(links);
  return doc;
}

LinkChar link_lookup(const ScenarioInstance& inst, NodeId a, NodeId b) {
  if (a == b) return self_link();
  const LinkTable& t = inst.links;
  NodeId row = a;
  NodeId col = b;
  if (row.kind != NodeKind::Compute) std::swap(row, col);
  if (row.kind != NodeKind::Compute)
    throw TopologyError("no direct link between " + to_string(a) + " and " +
                        to_string(b));
  const auto& e = t.at(row.index, t.column_of(col));
  if (!e.has_value())
    throw TopologyError("link between " + to_string(a) + " and " +
                        to_string(b) + " is marked forbidden");
  return *e;
}

}  // namespace placekit
