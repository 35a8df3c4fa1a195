#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "placekit/heuristics.hpp"
#include "placekit/scenario.hpp"
#include "helpers.hpp"

using namespace placekit;

namespace {

// Blocks a node from hosting anything by shrinking its memory capacity.
void block(NodeSpec& node) { node.mc = 0.01; }

}  // namespace

TEST_CASE("tca fills the user's device, then escalates tier by tier") {
  testing::FixtureOptions opt;
  opt.components = 3;
  opt.compute = 2;  // compute0 = tier1, compute1 = tier2
  const ScenarioInstance inst = testing::make_instance(opt);

  // user cc 1500 holds exactly one cr-1000 component; the rest land on the
  // first tier-1 node with room.
  const Placement p = tca(inst);
  CHECK(p.genes[0] == Gene{0, NodeId::user(0)});
  CHECK(p.genes[1] == Gene{0, NodeId::compute(0)});
  CHECK(p.genes[2] == Gene{0, NodeId::compute(0)});
}

TEST_CASE("tca escalates past a full user device") {
  testing::FixtureOptions opt;
  opt.components = 3;
  opt.compute = 3;
  ScenarioInstance inst = testing::make_instance(opt);
  block(inst.users[0]);
  const Placement p = tca(inst);
  for (const Gene& g : p.genes) CHECK(g == Gene{0, NodeId::compute(0)});
}

TEST_CASE("tca walks up the tiers when lower tiers are saturated") {
  testing::FixtureOptions opt;
  opt.components = 3;
  opt.compute = 3;
  ScenarioInstance inst = testing::make_instance(opt);
  block(inst.users[0]);
  inst.compute[0].cc = 1000;  // tier1: one component
  inst.compute[1].cc = 1000;  // tier2: one component
  const Placement p = tca(inst);
  CHECK(p.genes[0] == Gene{0, NodeId::compute(0)});
  CHECK(p.genes[1] == Gene{0, NodeId::compute(1)});
  CHECK(p.genes[2] == Gene{0, NodeId::compute(2)});
}

TEST_CASE("zero services yield an empty placement") {
  testing::FixtureOptions opt;
  opt.services = 0;
  const ScenarioInstance inst = testing::make_instance(opt);
  for (const auto& name : heuristic_names())
    CHECK(heuristic_by_name(name)(inst).genes.empty());
}

TEST_CASE("heuristics throw when nothing can host a component") {
  testing::FixtureOptions opt;
  opt.version_mr = 5000.0;  // exceeds every node's memory
  const ScenarioInstance inst = testing::make_instance(opt);
  for (const auto& name : heuristic_names())
    CHECK_THROWS_AS(heuristic_by_name(name)(inst), InfeasibleError);
}

TEST_CASE("lrc always selects the cheapest-cpu version") {
  testing::FixtureOptions opt;
  opt.versions = 3;  // cr 1000, 1100, 1200: version 0 is cheapest
  opt.components = 2;
  opt.compute = 2;
  ScenarioInstance inst = testing::make_instance(opt);
  block(inst.users[0]);
  const Placement p = lrc(inst);
  for (const Gene& g : p.genes) {
    CHECK(g.version == 0);
    CHECK(g.node == NodeId::compute(0));
  }

  // Cheapest version not at index 0 is still found.
  inst.services[0].components[0][2].cr = 400.0;
  const Placement q = lrc(inst);
  CHECK(q.genes[0].version == 2);
}

TEST_CASE("lrc escalates to tier3 when lower tiers cannot fit") {
  testing::FixtureOptions opt;
  opt.compute = 3;
  ScenarioInstance inst = testing::make_instance(opt);
  block(inst.users[0]);
  inst.compute[0].cc = 500;
  inst.compute[1].cc = 500;
  const Placement p = lrc(inst);
  CHECK(p.genes[0] == Gene{0, NodeId::compute(2)});
}

TEST_CASE("with a single version lrc reduces to tca") {
  testing::FixtureOptions opt;
  opt.versions = 1;
  opt.services = 3;
  opt.users = 3;
  opt.components = 2;
  opt.compute = 3;
  const ScenarioInstance inst = testing::make_instance(opt);
  CHECK(lrc(inst) == tca(inst));
}

TEST_CASE("mds places large-output components first") {
  testing::FixtureOptions opt;
  opt.services = 2;
  opt.users = 2;
  opt.components = 2;
  opt.compute = 2;
  ScenarioInstance inst = testing::make_instance(opt);
  block(inst.users[0]);
  block(inst.users[1]);
  inst.compute[0].cc = 1000;  // tier1 holds exactly one component
  // Distinct data sizes: service 1 / component 1 is the largest.
  inst.services[0].components[0][0].ds = 200;
  inst.services[0].components[1][0].ds = 400;
  inst.services[1].components[0][0].ds = 100;
  inst.services[1].components[1][0].ds = 900;

  const Placement p = mds(inst);
  // Only the biggest-ds component wins the scarce tier-1 slot.
  CHECK(p.at(1, 1, 2).node == NodeId::compute(0));
  CHECK(p.at(0, 0, 2).node == NodeId::compute(1));
  CHECK(p.at(0, 1, 2).node == NodeId::compute(1));
  CHECK(p.at(1, 0, 2).node == NodeId::compute(1));
}

TEST_CASE("mds breaks data-size ties in component order") {
  testing::FixtureOptions opt;
  opt.services = 2;
  opt.users = 2;
  opt.components = 2;
  opt.compute = 2;
  ScenarioInstance inst = testing::make_instance(opt);
  block(inst.users[0]);
  block(inst.users[1]);
  inst.compute[0].cc = 1000;
  const Placement p = mds(inst);  // all ds equal: (0,0) goes first
  CHECK(p.at(0, 0, 2).node == NodeId::compute(0));
  CHECK(p.at(1, 1, 2).node == NodeId::compute(1));
}

TEST_CASE("mr prefers the most reliable version and node") {
  testing::FixtureOptions opt;
  opt.versions = 2;
  opt.compute = 3;
  ScenarioInstance inst = testing::make_instance(opt);
  inst.services[0].components[0][0].rs = 0.90;
  inst.services[0].components[0][1].rs = 0.99;
  inst.compute[1].rs = 0.95;

  const Placement p = mr(inst);
  REQUIRE(p.genes.size() == 1);
  CHECK(p.genes[0].version == 1);
  CHECK(p.genes[0].node == NodeId::compute(1));
}

TEST_CASE("mr spills to the next most reliable node when full") {
  testing::FixtureOptions opt;
  opt.services = 3;
  opt.users = 3;
  opt.helpers = 3;
  opt.compute = 2;
  ScenarioInstance inst = testing::make_instance(opt);
  inst.compute[1].rs = 0.95;
  inst.compute[1].cc = 2100;  // room for two cr-1000 components only
  const Placement p = mr(inst);
  CHECK(p.genes[0].node == NodeId::compute(1));
  CHECK(p.genes[1].node == NodeId::compute(1));
  CHECK(p.genes[2].node == NodeId::compute(0));
}

TEST_CASE("mr uses a pair device only when it is the most reliable host") {
  testing::FixtureOptions opt;
  opt.user_rs = 0.99;  // user device beats every compute node's 0.9
  const ScenarioInstance inst = testing::make_instance(opt);
  const Placement p = mr(inst);
  CHECK(p.genes[0].node == NodeId::user(0));
}

TEST_CASE("mp pairs the cheapest version with the strongest host") {
  testing::FixtureOptions opt;
  opt.versions = 2;  // cr 1000, 1100
  opt.components = 2;
  opt.compute = 2;
  const ScenarioInstance inst = testing::make_instance(opt);
  const Placement p = mp(inst);
  for (const Gene& g : p.genes) {
    CHECK(g.version == 0);
    CHECK(g.node == NodeId::compute(0));  // cc ties keep the first node
  }
}

TEST_CASE("lp pairs the dearest version with the weakest host") {
  testing::FixtureOptions opt;
  opt.versions = 2;  // version 1 has cr 1100
  opt.components = 2;
  opt.compute = 2;
  const ScenarioInstance inst = testing::make_instance(opt);
  const Placement p = lp(inst);
  // user cc 1500 takes the first component; helper cc 2000 the second.
  CHECK(p.genes[0] == Gene{1, NodeId::user(0)});
  CHECK(p.genes[1] == Gene{1, NodeId::helper(0)});
}

TEST_CASE("every heuristic is deterministic") {
  const ScenarioInstance inst = generate(builtin_scale("small"), 4);
  for (const auto& name : heuristic_names()) {
    const Heuristic h = heuristic_by_name(name);
    CHECK(h(inst) == h(inst));
  }
}

TEST_CASE("every heuristic is feasible on generated instances") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ScenarioInstance inst = generate(builtin_scale("small"), seed);
    for (const auto& name : heuristic_names()) {
      const Placement p = heuristic_by_name(name)(inst);
      REQUIRE(p.genes.size() == static_cast<std::size_t>(inst.gene_count()));
      CHECK(check_constraints(inst, p).empty());
    }
  }
}

TEST_CASE("one version and one viable host force full agreement") {
  testing::FixtureOptions opt;
  opt.versions = 1;
  opt.services = 2;
  opt.users = 2;
  opt.components = 2;
  opt.compute = 1;
  ScenarioInstance inst = testing::make_instance(opt);
  for (auto& u : inst.users) block(u);
  for (auto& h : inst.helpers) block(h);
  Placement expect;
  expect.genes.assign(4, Gene{0, NodeId::compute(0)});
  for (const auto& name : heuristic_names())
    CHECK(heuristic_by_name(name)(inst) == expect);
}

TEST_CASE("unknown heuristic names are rejected") {
  CHECK_THROWS_AS(heuristic_by_name("nope"), std::invalid_argument);
}
