#pragma once

#include <cstdint>
#include <string>

#include "placekit/model.hpp"

namespace placekit {

struct Range {
  double lo = 0;
  double hi = 0;
};

struct ScaleSpec {
  int n_users = 0;
  int n_helpers = 0;
  int tier1 = 0, tier2 = 0, tier3 = 0;
  int x_services = 0;
  int y_components = 0;
  int v_versions = 0;

  Range comp_cr{800, 3000};
  Range comp_mr{1.5, 3.3};
  Range comp_dr{1, 3};
  Range user_cc{500, 2200};
  Range helper_cc{1500, 2500};
  Range device_mc{2, 4};
  Range device_dc{4, 8};
  Range tier1_cc{1500, 2000}, tier2_cc{5000, 15000}, tier3_cc{15000, 30000};
  Range tier1_mc{4, 8}, tier2_mc{8, 16}, tier3_mc{32, 64};
  Range tier1_dc{8, 32}, tier2_dc{32, 128}, tier3_dc{128, 256};
  Range ds{500, 800};
  Range node_rs{0.7, 0.9};
  Range comp_rs{0.9, 0.99};
  Range bw{100, 500};
  Range rtt_ms{500, 1200};
  // Generator defaults; the source study does not publish these ranges.
  Range provider_delay{0.05, 0.3};
  Range coding_delay{0.05, 0.5};

  double load_lo = 0.60;
  double load_hi = 0.70;
  double mean_out_degree = 1.5;

  void validate() const;
};

// The four tabulated evaluation scales.
ScaleSpec builtin_scale(const std::string& name);  // small..xlarge

const std::vector<std::string>& scale_names();

// Deterministic random instance for the given spec; aggregate component
// demand lands inside [load_lo, load_hi] of aggregate capacity per
// resource dimension.
ScenarioInstance generate(const ScaleSpec& spec, std::uint64_t seed);

// Demand/capacity ratio per dimension (cc, mc, dc), with per-component
// demand taken as the maximum across its versions and capacity summed over
// the shared compute tiers (pair-restricted devices excluded).
struct LoadRatios {
  double cc = 0, mc = 0, dc = 0;
};
LoadRatios load_ratios(const ScenarioInstance& instance);

}  // namespace placekit
