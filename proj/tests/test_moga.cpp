#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>

#include "placekit/moga.hpp"
#include "placekit/scenario.hpp"
#include "helpers.hpp"

using namespace placekit;

namespace {

// A mid-sized deterministic instance the run-level tests share.
ScenarioInstance run_fixture() {
  testing::FixtureOptions opt;
  opt.services = 4;
  opt.users = 4;
  opt.helpers = 2;
  opt.compute = 6;
  opt.components = 3;
  opt.versions = 2;
  opt.rtt_s = 0.05;
  return testing::make_instance(opt);
}

}  // namespace

TEST_CASE("solver config validation") {
  SolverConfig ok;
  CHECK_NOTHROW(ok.validate());

  SolverConfig bad = ok;
  bad.ps = 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok; bad.cr = 1.5;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok; bad.mr = -0.1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok; bad.ss = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok; bad.ss = bad.ps + 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok; bad.it = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok; bad.elitism_count = bad.ps;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok; bad.weights.w1 = 0.9;  // no longer sums to 1
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("default elitism is two percent, at least one") {
  SolverConfig c;
  c.ps = 200;
  CHECK(c.effective_elitism() == 4);
  c.ps = 300;
  CHECK(c.effective_elitism() == 6);
  c.ps = 10;
  CHECK(c.effective_elitism() == 1);  // 0.2 rounds to 0, floored to 1
  c.elitism_count = 7;
  CHECK(c.effective_elitism() == 7);
  c.elitism_count = 0;
  CHECK(c.effective_elitism() == 0);
}

TEST_CASE("presets carry the tabulated parameters") {
  const SolverConfig s = preset_config("small");
  CHECK(s.ps == 200); CHECK(s.cr == 0.6); CHECK(s.mr == 0.01);
  CHECK(s.ss == 20); CHECK(s.it == 50);
  const SolverConfig m = preset_config("medium");
  CHECK(m.ps == 300); CHECK(m.cr == 0.7); CHECK(m.ss == 30);
  CHECK(m.it == 100);
  const SolverConfig l = preset_config("large");
  CHECK(l.ps == 400); CHECK(l.cr == 0.7); CHECK(l.ss == 40);
  CHECK(l.it == 150);
  const SolverConfig xl = preset_config("xlarge");
  CHECK(xl.ps == 500); CHECK(xl.cr == 0.8); CHECK(xl.ss == 50);
  CHECK(xl.it == 200);
  CHECK_THROWS_AS(preset_config("huge"), std::invalid_argument);
}

TEST_CASE("parameter estimators reproduce the fitted values") {
  // Small workload: 15 services x 5 components, 15+8+20 nodes.
  CHECK(estimate_population_size(15, 5, 15, 8, 20) == 230);
  CHECK(estimate_iterations(15, 5, 15, 8, 20) == 62);
  CHECK(estimate_crossover_rate(15, 5, 15, 8, 20) ==
        doctest::Approx(0.8).epsilon(1e-12));

  // The crossover formula saturates at its clamp for every built-in scale.
  for (const auto& name : scale_names()) {
    const ScaleSpec spec = builtin_scale(name);
    CHECK(estimate_crossover_rate(spec.x_services, spec.y_components,
                                  spec.n_users, spec.n_helpers,
                                  spec.tier1 + spec.tier2 + spec.tier3) ==
          doctest::Approx(0.8).epsilon(1e-12));
  }
}

TEST_CASE("tournament selection") {
  const std::vector<double> fits = {0.1, 0.2, 0.3, 0.4};

  SUBCASE("full-population tournament returns the argmin") {
    Rng rng(1);
    for (int i = 0; i < 10; ++i)
      CHECK(tournament_select(fits, 4, rng) == 0);
  }
  SUBCASE("ties break toward the lower index") {
    const std::vector<double> tied = {0.5, 0.1, 0.1};
    Rng rng(2);
    for (int i = 0; i < 10; ++i)
      CHECK(tournament_select(tied, 3, rng) == 1);
  }
  SUBCASE("size-one tournaments draw uniformly") {
    Rng rng(3);
    std::map<int, int> counts;
    for (int i = 0; i < 4000; ++i) ++counts[tournament_select(fits, 1, rng)];
    for (int i = 0; i < 4; ++i) {
      CHECK(counts[i] > 800);
      CHECK(counts[i] < 1200);
    }
  }
  SUBCASE("selection pressure favors fitter individuals") {
    Rng rng(4);
    std::map<int, int> counts;
    for (int i = 0; i < 10000; ++i) ++counts[tournament_select(fits, 2, rng)];
    CHECK(counts[0] > counts[1]);
    CHECK(counts[1] > counts[2]);
    CHECK(counts[2] > counts[3]);
    CHECK(counts[3] == 0);  // the worst never wins a 2-way tournament
  }
}

TEST_CASE("single point crossover") {
  Placement a, b;
  for (int g = 0; g < 6; ++g) {
    a.genes.push_back(Gene{0, NodeId::compute(g)});
    b.genes.push_back(Gene{1, NodeId::user(g)});
  }

  SUBCASE("identical parents produce identical children") {
    Rng rng(1);
    const auto [c1, c2] = single_point_crossover(a, a, rng);
    CHECK(c1 == a);
    CHECK(c2 == a);
  }
  SUBCASE("length two forces the cut after the first gene") {
    Placement a2, b2;
    a2.genes = {a.genes[0], a.genes[1]};
    b2.genes = {b.genes[0], b.genes[1]};
    Rng rng(2);
    const auto [c1, c2] = single_point_crossover(a2, b2, rng);
    CHECK(c1.genes[0] == a2.genes[0]);
    CHECK(c1.genes[1] == b2.genes[1]);
    CHECK(c2.genes[0] == b2.genes[0]);
    CHECK(c2.genes[1] == a2.genes[1]);
  }
  SUBCASE("children conserve genes positionally") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const auto [c1, c2] = single_point_crossover(a, b, rng);
      bool swapped = false;
      for (std::size_t g = 0; g < a.genes.size(); ++g) {
        const bool kept = c1.genes[g] == a.genes[g] &&
                          c2.genes[g] == b.genes[g];
        const bool crossed = c1.genes[g] == b.genes[g] &&
                             c2.genes[g] == a.genes[g];
        CHECK((kept || crossed));
        // After the first crossed position everything stays crossed.
        if (swapped) CHECK(crossed);
        swapped = swapped || crossed;
      }
      CHECK(swapped);  // the cut point never degenerates to length
      CHECK(c1.genes[0] == a.genes[0]);  // nor to zero
    }
  }
}

TEST_CASE("insertion mutation") {
  const ScenarioInstance inst = run_fixture();
  Placement base;
  base.genes.assign(inst.gene_count(), Gene{0, NodeId::compute(0)});

  SUBCASE("zero rate is the identity") {
    Rng rng(1);
    CHECK(insertion_mutation(inst, base, 0.0, rng) == base);
  }
  SUBCASE("rate one re-draws every gene within its legal domain") {
    Rng rng(2);
    const Placement mutated = insertion_mutation(inst, base, 1.0, rng);
    const int y_count = inst.components_per_service();
    for (std::size_t g = 0; g < mutated.genes.size(); ++g) {
      const int x = static_cast<int>(g) / y_count;
      const auto hosts = legal_hosts(inst, x);
      CHECK(std::find(hosts.begin(), hosts.end(), mutated.genes[g].node) !=
            hosts.end());
      CHECK(mutated.genes[g].version >= 0);
      CHECK(mutated.genes[g].version < inst.versions_per_component());
    }
  }
  SUBCASE("per-gene rate matches the binomial expectation") {
    // 12 genes, 8 legal hosts, 2 versions: a re-draw repeats the original
    // gene with probability 1/16, so P(change) = 0.5 * 15/16 = 0.46875.
    Rng rng(3);
    int changed = 0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
      const Placement m = insertion_mutation(inst, base, 0.5, rng);
      for (std::size_t g = 0; g < m.genes.size(); ++g)
        if (m.genes[g] != base.genes[g]) ++changed;
    }
    const double p = 0.5 * 15.0 / 16.0;
    const double n = static_cast<double>(trials) * inst.gene_count();
    const double sd = std::sqrt(n * p * (1 - p));
    CHECK(std::abs(changed - n * p) < 5 * sd);
  }
}

TEST_CASE("a single-choice search space yields a flat run") {
  testing::FixtureOptions opt;
  opt.compute = 1;
  opt.components = 2;
  opt.versions = 1;
  ScenarioInstance inst = testing::make_instance(opt);
  inst.users[0].mc = 0.01;
  inst.helpers[0].mc = 0.01;

  SolverConfig config;
  config.ps = 8;
  config.ss = 2;
  config.it = 5;
  config.seed = 9;
  const MogaResult result = run_moga(inst, config);

  Placement expect;
  expect.genes.assign(2, Gene{0, NodeId::compute(0)});
  CHECK(result.best == expect);
  REQUIRE(result.history.iterations.size() == 5);
  for (const auto& stats : result.history.iterations) {
    CHECK(stats.best == doctest::Approx(stats.worst).epsilon(1e-12));
    CHECK(stats.best ==
          doctest::Approx(result.history.iterations[0].best).epsilon(1e-12));
  }
  CHECK(result.report.fitness ==
        doctest::Approx(result.history.iterations.back().best).epsilon(1e-12));
}

TEST_CASE("runs are deterministic in the seed") {
  const ScenarioInstance inst = run_fixture();
  SolverConfig config;
  config.ps = 20;
  config.ss = 4;
  config.it = 10;
  config.seed = 123;
  const MogaResult a = run_moga(inst, config);
  const MogaResult b = run_moga(inst, config);
  CHECK(a.best == b.best);
  REQUIRE(a.history.iterations.size() == b.history.iterations.size());
  for (std::size_t i = 0; i < a.history.iterations.size(); ++i) {
    CHECK(a.history.iterations[i].best == b.history.iterations[i].best);
    CHECK(a.history.iterations[i].median == b.history.iterations[i].median);
    CHECK(a.history.iterations[i].worst == b.history.iterations[i].worst);
  }
  CHECK(a.report.fitness == b.report.fitness);
}

TEST_CASE("elitism makes the best series monotone under a frozen scale") {
  const ScenarioInstance inst = run_fixture();
  SolverConfig config;
  config.ps = 30;
  config.ss = 5;
  config.it = 25;
  config.seed = 7;
  const MogaResult result = run_moga(inst, config);
  REQUIRE(result.history.iterations.size() == 25);
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& stats : result.history.iterations) {
    CHECK(stats.best <= prev + 1e-12);
    CHECK(stats.best <= stats.median + 1e-12);
    CHECK(stats.median <= stats.worst + 1e-12);
    prev = stats.best;
  }
  // The reported fitness is exactly the final best of the frozen scale.
  CHECK(result.report.fitness ==
        doctest::Approx(result.history.iterations.back().best).epsilon(1e-12));
  // And re-evaluating the winner under the returned normalizer agrees.
  const EvaluationReport re =
      evaluate(inst, result.best, config.weights, result.normalizer);
  CHECK(re.fitness == doctest::Approx(result.report.fitness).epsilon(1e-12));
}

TEST_CASE("per-generation normalization stays within bounds") {
  const ScenarioInstance inst = run_fixture();
  SolverConfig config;
  config.ps = 20;
  config.ss = 4;
  config.it = 10;
  config.seed = 3;
  config.rt_norm = RtNormMode::PerGeneration;
  const MogaResult result = run_moga(inst, config);
  for (const auto& stats : result.history.iterations) {
    CHECK(stats.best >= 0.0);
    CHECK(stats.worst <= 1.0 + 1e-12);
    CHECK(stats.best <= stats.median + 1e-12);
    CHECK(stats.median <= stats.worst + 1e-12);
  }
  CHECK(check_constraints(inst, result.best).empty());
}

TEST_CASE("results do not depend on the worker thread count") {
  const ScenarioInstance inst = run_fixture();
  SolverConfig config;
  config.ps = 40;  // large enough to engage the parallel evaluator
  config.ss = 4;
  config.it = 8;
  config.seed = 55;

  setenv("PLACEKIT_THREADS", "1", 1);
  const MogaResult serial = run_moga(inst, config);
  setenv("PLACEKIT_THREADS", "4", 1);
  const MogaResult parallel = run_moga(inst, config);
  unsetenv("PLACEKIT_THREADS");

  CHECK(serial.best == parallel.best);
  CHECK(serial.report.fitness == parallel.report.fitness);
  REQUIRE(serial.history.iterations.size() ==
          parallel.history.iterations.size());
  for (std::size_t i = 0; i < serial.history.iterations.size(); ++i)
    CHECK(serial.history.iterations[i].best ==
          parallel.history.iterations[i].best);
}

TEST_CASE("the best placement is always feasible") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const ScenarioInstance inst = generate(builtin_scale("small"), seed);
    SolverConfig config;
    config.ps = 16;
    config.ss = 3;
    config.it = 5;
    config.seed = seed;
    const MogaResult result = run_moga(inst, config);
    CHECK(check_constraints(inst, result.best).empty());
  }
}
