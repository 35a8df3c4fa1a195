#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "placekit/errors.hpp"

namespace placekit {

enum class NodeKind { User, Helper, Compute };

enum class Tier { UserDevice, HelperDevice, Tier1, Tier2, Tier3 };

const char* to_string(NodeKind kind);
const char* to_string(Tier tier);

struct NodeId {
  NodeKind kind = NodeKind::Compute;
  int index = 0;

  auto operator<=>(const NodeId&) const = default;

  static NodeId user(int i) { return {NodeKind::User, i}; }
  static NodeId helper(int i) { return {NodeKind::Helper, i}; }
  static NodeId compute(int i) { return {NodeKind::Compute, i}; }
};

std::string to_string(NodeId id);

struct NodeSpec {
  double cc = 0;  // compute capacity, MIPS
  double mc = 0;  // memory capacity, GB
  double dc = 0;  // disk capacity, GB
  std::string os;
  double rs = 0;  // reliability score in (0,1]
  Tier tier = Tier::UserDevice;
};

struct Pair {
  int user = 0;    // index into ScenarioInstance::users
  int helper = 0;  // index into ScenarioInstance::helpers
};

struct VersionSpec {
  double cr = 0;  // computation requirement, millions of instructions
  double mr = 0;  // memory requirement, GB
  double dr = 0;  // disk requirement, GB
  double ds = 0;  // output data size, Mb
  std::string pr;
  std::string tc;
  std::string ct;
  double rs = 0;              // reliability score in (0,1]
  double provider_delay = 0;  // seconds
  double coding_delay = 0;    // seconds
};

struct ServiceSpec {
  int pair_index = 0;
  // components[y][v]: version v of component y.
  std::vector<std::vector<VersionSpec>> components;
  // Strictly upper-triangular adjacency: dag[y][z] = 1 means component y
  // feeds component z (z > y).
  std::vector<std::vector<std::uint8_t>> dag;

  int component_count() const { return static_cast<int>(components.size()); }
};

// Link characteristics with delays already canonicalized to seconds.
struct LinkChar {
  double bw_mbps = 0;
  double rtt_s = 0;
};

// Zero-delay sentinel for co-located endpoints.
inline LinkChar self_link() {
  return {std::numeric_limits<double>::infinity(), 0.0};
}

// K rows (compute nodes) x (K+N+M) columns (compute, user, helper).
struct LinkTable {
  int k = 0;
  int n = 0;
  int m = 0;
  std::vector<std::optional<LinkChar>> entries;  // row-major, k*(k+n+m)

  int cols() const { return k + n + m; }
  const std::optional<LinkChar>& at(int row, int col) const {
    return entries[static_cast<std::size_t>(row) * cols() + col];
  }
  std::optional<LinkChar>& at(int row, int col) {
    return entries[static_cast<std::size_t>(row) * cols() + col];
  }
  // Column index of a node in the Eq.-layout: compute first, then users,
  // then helpers.
  int column_of(NodeId id) const;
};

struct ScenarioInstance {
  std::vector<NodeSpec> users;
  std::vector<NodeSpec> helpers;
  std::vector<NodeSpec> compute;
  std::vector<Pair> pairs;
  std::vector<ServiceSpec> services;
  LinkTable links;

  int user_count() const { return static_cast<int>(users.size()); }
  int helper_count() const { return static_cast<int>(helpers.size()); }
  int compute_count() const { return static_cast<int>(compute.size()); }
  int service_count() const { return static_cast<int>(services.size()); }

  // Uniform across the scenario (validated at load).
  int components_per_service() const {
    return services.empty() ? 0 : services.front().component_count();
  }
  int versions_per_component() const {
    if (services.empty() || services.front().components.empty()) return 0;
    return static_cast<int>(services.front().components.front().size());
  }
  int gene_count() const {
    return service_count() * components_per_service();
  }

  const NodeSpec& node(NodeId id) const;
  const VersionSpec& version(int x, int y, int v) const {
    return services[x].components[y][v];
  }
};

// Parses and validates a scenario document. Throws ValidationError with a
// path per offending element on schema or semantic violations.
ScenarioInstance load_scenario(const nlohmann::json& document);
ScenarioInstance load_scenario_file(const std::string& path);

// Inverse of load_scenario (delays converted back to the external units).
nlohmann::json save_scenario(const ScenarioInstance& instance);

// Runs all semantic checks on an already-built instance.
void validate_instance(const ScenarioInstance& instance);

// Symmetric link characteristics between a and b. a == b returns the
// zero-delay sentinel. Requires at least one endpoint to be a compute node.
LinkChar link_lookup(const ScenarioInstance& instance, NodeId a, NodeId b);

}  // namespace placekit
