#pragma once

#include <random>
#include <string>
#include <vector>

#include "placekit/model.hpp"

namespace placekit {

using Rng = std::mt19937_64;

struct Gene {
  int version = 0;
  NodeId node;

  auto operator<=>(const Gene&) const = default;
};

// Chromosome: one gene per service component, index x*Y + y.
struct Placement {
  std::vector<Gene> genes;

  bool operator==(const Placement&) const = default;

  Gene& at(int x, int y, int y_count) { return genes[x * y_count + y]; }
  const Gene& at(int x, int y, int y_count) const {
    return genes[x * y_count + y];
  }
};

enum class ViolationKind { Resource, Ownership };

struct Violation {
  ViolationKind kind = ViolationKind::Resource;
  NodeId node;          // overloaded node, or illegal host
  int gene_index = -1;  // offending gene for ownership violations
  std::string message;
};

// Per-node accumulated demand of the versions a placement selects.
struct ResourceLedger {
  struct Usage {
    double cc = 0, mc = 0, dc = 0;
  };
  std::vector<Usage> users, helpers, compute;

  static ResourceLedger build(const ScenarioInstance& instance,
                              const Placement& placement);
  Usage& of(NodeId id);
  const Usage& of(NodeId id) const;
};

// All K compute nodes plus pair x's own user and helper devices.
std::vector<NodeId> legal_hosts(const ScenarioInstance& instance, int x);

// Empty iff the placement satisfies the resource and ownership constraints.
std::vector<Violation> check_constraints(const ScenarioInstance& instance,
                                         const Placement& placement);

// Repairs ownership violations, then resource overloads, touching only
// violating genes. Throws InfeasibleError when no assignment exists.
Placement heal(const ScenarioInstance& instance, Placement placement,
               Rng& rng);

// Uniformly random (version, legal host) per gene, then healed.
Placement random_placement(const ScenarioInstance& instance, Rng& rng);

// Experimental endpoint pinning (off by default everywhere): moves each
// service's first component to its pair's user device and its last to the
// helper device, then heals so resource constraints still hold.
Placement pin_endpoints(const ScenarioInstance& instance, Placement placement,
                        Rng& rng);

}  // namespace placekit
