#include "placekit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "placekit/placement.hpp"

namespace placekit {

namespace {

const char* kProviders[] = {"aws", "azure", "k8s"};
const char* kTranscodes[] = {"cbr", "vbr"};
const char* kCodecs[] = {"h264", "h265", "av1"};

}  // namespace

void ScaleSpec::validate() const {
  auto check_range = [](const Range& r, const char* name) {
    if (!(r.lo <= r.hi))
      throw GenerationError(std::string("range ") + name + " has lo > hi");
  };
  if (n_users <= 0 || n_helpers <= 0 || x_services <= 0 ||
      y_components <= 0 || v_versions <= 0 || tier1 + tier2 + tier3 <= 0)
    throw GenerationError("scale counts must be positive");
  check_range(comp_cr, "comp_cr");
  check_range(comp_mr, "comp_mr");
  check_range(comp_dr, "comp_dr");
  check_range(user_cc, "user_cc");
  check_range(helper_cc, "helper_cc");
  check_range(device_mc, "device_mc");
  check_range(device_dc, "device_dc");
  check_range(tier1_cc, "tier1_cc");
  check_range(tier2_cc, "tier2_cc");
  check_range(tier3_cc, "tier3_cc");
  check_range(tier1_mc, "tier1_mc");
  check_range(tier2_mc, "tier2_mc");
  check_range(tier3_mc, "tier3_mc");
  check_range(tier1_dc, "tier1_dc");
  check_range(tier2_dc, "tier2_dc");
  check_range(tier3_dc, "tier3_dc");
  check_range(ds, "ds");
  check_range(node_rs, "node_rs");
  check_range(comp_rs, "comp_rs");
  check_range(bw, "bw");
  check_range(rtt_ms, "rtt_ms");
  check_range(provider_delay, "provider_delay");
  check_range(coding_delay, "coding_delay");
  if (!(0 < load_lo && load_lo <= load_hi && load_hi < 1))
    throw GenerationError("load window must satisfy 0 < lo <= hi < 1");
}

const std::vector<std::string>& scale_names() {
  static const std::vector<std::string> names = {"small", "medium", "large",
                                                 "xlarge"};
  return names;
}

ScaleSpec builtin_scale(const std::string& name) {
  ScaleSpec spec;
  if (name == "small") {
    spec.n_users = 15; spec.n_helpers = 8;
    spec.tier1 = 10; spec.tier2 = 8; spec.tier3 = 2;
    spec.x_services = 15; spec.y_components = 5; spec.v_versions = 5;
  } else if (name == "medium") {
    spec.n_users = 50; spec.n_helpers = 25;
    spec.tier1 = 30; spec.tier2 = 18; spec.tier3 = 4;
    spec.x_services = 50; spec.y_components = 5; spec.v_versions = 6;
  } else if (name == "large") {
    spec.n_users = 100; spec.n_helpers = 50;
    spec.tier1 = 75; spec.tier2 = 60; spec.tier3 = 8;
    spec.x_services = 200; spec.y_components = 5; spec.v_versions = 7;
  } else if (name == "xlarge") {
    spec.n_users = 250; spec.n_helpers = 125;
    spec.tier1 = 150; spec.tier2 = 100; spec.tier3 = 15;
    spec.x_services = 250; spec.y_components = 5; spec.v_versions = 8;
  } else {
    throw std::invalid_argument("unknown scale: " + name);
  }
  return spec;
}

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(const Range& r) {
    if (r.lo == r.hi) return r.lo;
    return std::uniform_real_distribution<double>(r.lo, r.hi)(rng_);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  Rng& rng() { return rng_; }

 private:
  Rng rng_;
};

// Delay class of a link: the rtt range is split in thirds so that latency
// rises with tier distance. Helper links and anything touching Tier-3 sit
// in the top third; user access links to Tier-1 in the bottom third.
Range rtt_subrange(const ScaleSpec& spec, Tier a, Tier b) {
  const double lo = spec.rtt_ms.lo;
  const double width = spec.rtt_ms.hi - spec.rtt_ms.lo;
  auto is = [&](Tier t) { return a == t || b == t; };
  if (is(Tier::HelperDevice) || is(Tier::Tier3))
    return {lo + 2 * width / 3, spec.rtt_ms.hi};
  if (is(Tier::UserDevice) && is(Tier::Tier1)) return {lo, lo + width / 3};
  return {lo + width / 3, lo + 2 * width / 3};
}

std::vector<std::vector<std::uint8_t>> random_dag(const ScaleSpec& spec,
                                                  Sampler& sampler) {
  const int y = spec.y_components;
  std::vector<std::vector<std::uint8_t>> dag(
      y, std::vector<std::uint8_t>(y, 0));
  // Connectivity spine: every non-root component has a predecessor.
  for (int z = 1; z < y; ++z) dag[sampler.uniform_int(0, z - 1)][z] = 1;
  const int max_edges = y * (y - 1) / 2;
  const int target = std::min(
      max_edges,
      static_cast<int>(std::lround(spec.mean_out_degree * y)));
  std::vector<std::pair<int, int>> absent;
  for (int a = 0; a < y; ++a)
    for (int b = a + 1; b < y; ++b)
      if (!dag[a][b]) absent.emplace_back(a, b);
  std::shuffle(absent.begin(), absent.end(), sampler.rng());
  for (int i = 0; i < target - (y - 1) && i < static_cast<int>(absent.size());
       ++i)
    dag[absent[i].first][absent[i].second] = 1;
  return dag;
}

}  // namespace

LoadRatios load_ratios(const ScenarioInstance& inst) {
  double demand_cc = 0, demand_mc = 0, demand_dc = 0;
  for (const auto& svc : inst.services) {
    for (const auto& comp : svc.components) {
      // A component's capacity requirement is what it may demand: the
      // maximum over its versions, per dimension.
      double cr = 0, mr = 0, dr = 0;
      for (const auto& v : comp) {
        cr = std::max(cr, v.cr);
        mr = std::max(mr, v.mr);
        dr = std::max(dr, v.dr);
      }
      demand_cc += cr;
      demand_mc += mr;
      demand_dc += dr;
    }
  }
  // Capacity counts the shared compute tiers only: user and helper devices
  // are restricted to their own pair's components, so they are not general
  // infrastructure capacity.
  double cap_cc = 0, cap_mc = 0, cap_dc = 0;
  for (const auto& node : inst.compute) {
    cap_cc += node.cc;
    cap_mc += node.mc;
    cap_dc += node.dc;
  }
  return {demand_cc / cap_cc, demand_mc / cap_mc, demand_dc / cap_dc};
}

ScenarioInstance generate(const ScaleSpec& spec, std::uint64_t seed) {
  spec.validate();
  Sampler sampler(seed);
  ScenarioInstance inst;

  auto make_node = [&](const Range& cc, const Range& mc, const Range& dc,
                       Tier tier) {
    NodeSpec node;
    node.cc = sampler.uniform(cc);
    node.mc = sampler.uniform(mc);
    node.dc = sampler.uniform(dc);
    node.os = "linux";
    node.rs = sampler.uniform(spec.node_rs);
    node.tier = tier;
    return node;
  };
  for (int i = 0; i < spec.n_users; ++i)
    inst.users.push_back(make_node(spec.user_cc, spec.device_mc,
                                   spec.device_dc, Tier::UserDevice));
  for (int i = 0; i < spec.n_helpers; ++i)
    inst.helpers.push_back(make_node(spec.helper_cc, spec.device_mc,
                                     spec.device_dc, Tier::HelperDevice));
  for (int i = 0; i < spec.tier1; ++i)
    inst.compute.push_back(
        make_node(spec.tier1_cc, spec.tier1_mc, spec.tier1_dc, Tier::Tier1));
  for (int i = 0; i < spec.tier2; ++i)
    inst.compute.push_back(
        make_node(spec.tier2_cc, spec.tier2_mc, spec.tier2_dc, Tier::Tier2));
  for (int i = 0; i < spec.tier3; ++i)
    inst.compute.push_back(
        make_node(spec.tier3_cc, spec.tier3_mc, spec.tier3_dc, Tier::Tier3));

  // Users are reused round-robin when a scale asks for more services than
  // user devices; helpers likewise.
  for (int i = 0; i < spec.x_services; ++i)
    inst.pairs.push_back({i % spec.n_users, i % spec.n_helpers});

  for (int x = 0; x < spec.x_services; ++x) {
    ServiceSpec svc;
    svc.pair_index = x;
    for (int y = 0; y < spec.y_components; ++y) {
      std::vector<VersionSpec> versions;
      for (int v = 0; v < spec.v_versions; ++v) {
        VersionSpec version;
        version.cr = sampler.uniform(spec.comp_cr);
        version.mr = sampler.uniform(spec.comp_mr);
        version.dr = sampler.uniform(spec.comp_dr);
        version.ds = sampler.uniform(spec.ds);
        version.pr = kProviders[v % 3];
        version.tc = kTranscodes[v % 2];
        version.ct = kCodecs[v % 3];
        version.rs = sampler.uniform(spec.comp_rs);
        version.provider_delay = sampler.uniform(spec.provider_delay);
        version.coding_delay = sampler.uniform(spec.coding_delay);
        versions.push_back(std::move(version));
      }
      svc.components.push_back(std::move(versions));
    }
    svc.dag = random_dag(spec, sampler);
    inst.services.push_back(std::move(svc));
  }

  // Rescale demands so aggregate load hits the middle of the target window
  // in every resource dimension.
  const double target = (spec.load_lo + spec.load_hi) / 2.0;
  const LoadRatios before = load_ratios(inst);
  const double f_cc = target / before.cc;
  const double f_mc = target / before.mc;
  const double f_dc = target / before.dc;
  if (!(f_cc > 0) || !(f_mc > 0) || !(f_dc > 0) || !std::isfinite(f_cc) ||
      !std::isfinite(f_mc) || !std::isfinite(f_dc))
    throw GenerationError("load target unreachable for this spec");
  for (auto& svc : inst.services)
    for (auto& comp : svc.components)
      for (auto& v : comp) {
        v.cr *= f_cc;
        v.mr *= f_mc;
        v.dr *= f_dc;
      }

  LinkTable& table = inst.links;
  table.k = inst.compute_count();
  table.n = inst.user_count();
  table.m = inst.helper_count();
  table.entries.assign(static_cast<std::size_t>(table.k) * table.cols(),
                       std::nullopt);
  auto sample_link = [&](Tier a, Tier b) {
    const Range rtt = rtt_subrange(spec, a, b);
    return LinkChar{sampler.uniform(spec.bw), sampler.uniform(rtt) / 1e3};
  };
  for (int row = 0; row < table.k; ++row) {
    const Tier row_tier = inst.compute[row].tier;
    for (int col = 0; col < table.k; ++col) {
      if (col == row) {
        table.at(row, col) = self_link();
      } else if (col < row) {
        table.at(row, col) = table.at(col, row);
      } else {
        table.at(row, col) = sample_link(row_tier, inst.compute[col].tier);
      }
    }
    for (int u = 0; u < table.n; ++u)
      table.at(row, table.k + u) = sample_link(row_tier, Tier::UserDevice);
    for (int h = 0; h < table.m; ++h)
      table.at(row, table.k + table.n + h) =
          sample_link(row_tier, Tier::HelperDevice);
  }

  validate_instance(inst);
  return inst;
}

}  // namespace placekit
