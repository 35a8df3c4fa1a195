#pragma once

// Shared fixture builders for the test suites. Instances are constructed
// directly (not via the JSON loader) so individual fields can be tweaked
// freely before running assertions.

#include <vector>

#include "placekit/model.hpp"

namespace placekit::testing {

struct FixtureOptions {
  int users = 1;
  int helpers = 1;
  int compute = 1;
  int services = 1;
  int components = 1;
  int versions = 1;

  double user_cc = 1500, helper_cc = 2000, compute_cc = 10000;
  double node_mc = 1000, node_dc = 1000;
  double user_rs = 0.8, helper_rs = 0.8, compute_rs = 0.9;

  double version_cr = 1000, version_mr = 1, version_dr = 1, version_ds = 500;
  double version_rs = 0.95;
  double provider_delay = 0.1, coding_delay = 0.2;

  double bw = 100;     // Mbps, every link
  double rtt_s = 1.0;  // seconds, every link
  bool chain_dag = true;  // y -> y+1 edges; otherwise edgeless
};

// Deterministic instance with uniform node/version attributes and a dense
// symmetric link table. Tiers cycle tier1, tier2, tier3 across compute
// nodes; pairs are assigned round-robin.
inline ScenarioInstance make_instance(const FixtureOptions& opt = {}) {
  ScenarioInstance inst;
  auto node = [&](double cc, double rs, Tier tier) {
    NodeSpec n;
    n.cc = cc;
    n.mc = opt.node_mc;
    n.dc = opt.node_dc;
    n.os = "linux";
    n.rs = rs;
    n.tier = tier;
    return n;
  };
  for (int i = 0; i < opt.users; ++i)
    inst.users.push_back(node(opt.user_cc, opt.user_rs, Tier::UserDevice));
  for (int i = 0; i < opt.helpers; ++i)
    inst.helpers.push_back(
        node(opt.helper_cc, opt.helper_rs, Tier::HelperDevice));
  const Tier tiers[] = {Tier::Tier1, Tier::Tier2, Tier::Tier3};
  for (int i = 0; i < opt.compute; ++i)
    inst.compute.push_back(
        node(opt.compute_cc, opt.compute_rs, tiers[i % 3]));

  for (int i = 0; i < opt.services; ++i)
    inst.pairs.push_back({i % opt.users, i % opt.helpers});

  for (int x = 0; x < opt.services; ++x) {
    ServiceSpec svc;
    svc.pair_index = x;
    for (int y = 0; y < opt.components; ++y) {
      std::vector<VersionSpec> versions;
      for (int v = 0; v < opt.versions; ++v) {
        VersionSpec ver;
        ver.cr = opt.version_cr + 100.0 * v;
        ver.mr = opt.version_mr;
        ver.dr = opt.version_dr;
        ver.ds = opt.version_ds;
        ver.pr = "aws";
        ver.tc = "cbr";
        ver.ct = "h264";
        ver.rs = opt.version_rs;
        ver.provider_delay = opt.provider_delay;
        ver.coding_delay = opt.coding_delay;
        versions.push_back(ver);
      }
      svc.components.push_back(std::move(versions));
    }
    svc.dag.assign(opt.components,
                   std::vector<std::uint8_t>(opt.components, 0));
    if (opt.chain_dag)
      for (int y = 0; y + 1 < opt.components; ++y) svc.dag[y][y + 1] = 1;
    inst.services.push_back(std::move(svc));
  }

  LinkTable& t = inst.links;
  t.k = opt.compute;
  t.n = opt.users;
  t.m = opt.helpers;
  t.entries.assign(static_cast<std::size_t>(t.k) * t.cols(), std::nullopt);
  for (int row = 0; row < t.k; ++row)
    for (int col = 0; col < t.cols(); ++col)
      t.at(row, col) = (col == row) ? self_link()
                                    : LinkChar{opt.bw, opt.rtt_s};
  return inst;
}

}  // namespace placekit::testing
