#include <doctest.h>

#include "resclust/resilience.hpp"
#include "support/test_support.hpp"

using namespace resclust;
using namespace resclust::testing;

TEST_CASE("check_center_proximity") {
  const MetricSpace l4 = line4();
  const Clustering good{{0, 0, 1, 1}, {0, 2}, 2.0};
  const ProximityReport ok = check_center_proximity(good, l4, 2.0);
  CHECK(ok.holds);
  CHECK(ok.violations.empty());

  const Clustering one{{0, 0, 0, 0}, {1}, 20.0};
  CHECK(check_center_proximity(one, l4, 2.0).holds);

  // Point 1: d(1, c_2) = 1 <= 2 * d(1, c_1) = 2.
  const Clustering bad{{0, 0, 1}, {0, 2}, 1.0};
  const ProximityReport r = check_center_proximity(bad, line3(), 2.0);
  CHECK_FALSE(r.holds);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].p == 1);
  CHECK(r.violations[0].i == 0);
  CHECK(r.violations[0].j == 1);
  CHECK(r.violations[0].d_p_ci == 1.0);
  CHECK(r.violations[0].d_p_cj == 1.0);
}

TEST_CASE("check_closer_to_own_center") {
  const MetricSpace l4 = line4();
  CHECK(check_closer_to_own_center(Clustering{{0, 0, 1, 1}, {0, 2}, 2.0}, l4).holds);
  CHECK(check_closer_to_own_center(Clustering{{0, 0, 0, 0}, {1}, 20.0}, l4).holds);

  // Clusters {0,10 | 1,11} with centers 0 and 1.
  const CloserReport r = check_closer_to_own_center(Clustering{{0, 1, 0, 1}, {0, 1}, 0.0}, l4);
  CHECK_FALSE(r.holds);
  const bool flagged = std::any_of(r.violations.begin(), r.violations.end(), [](const CloserViolation& v) {
    return v.u == 2 && v.v == 3 && v.d_u_ci == 10.0 && v.d_u_v == 1.0;
  });
  CHECK(flagged);
}

TEST_CASE("single_linkage_baseline") {
  const MetricSpace l4 = line4();
  CHECK(single_linkage_baseline(l4, 2) == std::vector<int>{0, 0, 1, 1});
  CHECK(single_linkage_baseline(l4, 4) == std::vector<int>{0, 1, 2, 3});
  CHECK(single_linkage_baseline(l4, 1) == std::vector<int>{0, 0, 0, 0});
  CHECK_THROWS_AS(single_linkage_baseline(l4, 0), std::invalid_argument);
  CHECK_THROWS_AS(single_linkage_baseline(l4, 5), std::invalid_argument);
}

TEST_CASE("probe_resilience examples") {
  const ResilienceProbeReport l4 = probe_resilience(line4(), kmedian(), 2, 2.0, 100, 1);
  CHECK(l4.unique);
  CHECK(l4.stable);
  CHECK(l4.certified);
  CHECK(l4.trials_run == 100);
  CHECK_FALSE(l4.first_failure.has_value());

  const ResilienceProbeReport l3 = probe_resilience(line3(), kmedian(), 2, 2.0, 10, 1);
  CHECK_FALSE(l3.unique);
  CHECK_FALSE(l3.certified);

  for (std::uint64_t seed : {0ull, 5ull}) {
    CHECK(probe_resilience(line3(), kmedian(), 2, 1.0, 5, seed).stable);
    CHECK(probe_resilience(line4(), kcenter(), 2, 1.0, 5, seed).stable);
  }

  CHECK_THROWS_AS(probe_resilience(line4(), kmedian(), 2, 2.0, 0, 1), std::invalid_argument);
  SeededRng rng(1);
  CHECK_THROWS_AS(probe_resilience(random_euclidean(rng, 14), kmedian(), 2, 2.0, 1, 1), std::invalid_argument);
}

TEST_CASE("probe_resilience detects instability") {
  // Two pairs whose split is barely preferred: random shrinkage flips it.
  const MetricSpace m = from_points({{0}, {1}, {2.2}, {3.3}}, Norm::kEuclidean);
  const ResilienceProbeReport r = probe_resilience(m, kmedian(), 2, 2.0, 50, 3);
  CHECK(r.unique);
  CHECK_FALSE(r.stable);
  REQUIRE(r.first_failure.has_value());
  CHECK(r.first_failure->seed == 3 + r.first_failure->trial);
  CHECK(r.first_failure->partition != r.base.best());
  CHECK_FALSE(r.certified);
}

TEST_CASE("probe_resilience is deterministic") {
  const GeneratedInstance inst = generate_resilient_instance({8, 2, 3.0, 1.0, 5, 1});
  const auto a = probe_resilience(inst.metric, kmeans(), 2, 2.0, 20, 9);
  const auto b = probe_resilience(inst.metric, kmeans(), 2, 2.0, 20, 9);
  CHECK(a.certified == b.certified);
  CHECK(a.trials_run == b.trials_run);
  CHECK(a.base.optimal_partitions == b.base.optimal_partitions);
}

TEST_CASE("adversarial_witness") {
  SUBCASE("certified instance has no witness") {
    const GeneratedInstance inst = generate_resilient_instance({10, 3, 4.0, 1.0, 42, 1});
    CHECK_FALSE(adversarial_witness(inst.metric, kmedian(), 3, 2.0).has_value());
  }
  SUBCASE("line of three points") {
    const auto w = adversarial_witness(line3(), kmedian(), 2, 2.0);
    REQUIRE(w.has_value());
    CHECK(w->within_bounds);
    const MetricSpace base = line3();
    for (std::size_t u = 0; u < 3; ++u) {
      for (std::size_t v = 0; v < 3; ++v) {
        CHECK(w->perturbed(u, v) <= base(u, v));
        CHECK(w->perturbed(u, v) >= base(u, v) / 2.0);
      }
    }
    // The base optimum is tied, so it is not uniquely preserved.
    CHECK(w->optimum_changed);
  }
  SUBCASE("alpha = 1 never proves anything") {
    const auto w = adversarial_witness(line3(), kmedian(), 2, 1.0);
    if (w) {
      CHECK(w->perturbed.matrix() == line3().matrix());
    }
  }
  SUBCASE("a genuine proof on an unstable instance") {
    // Point 2 sits between the two groups; shrinking its edge to c_j flips it.
    const MetricSpace m = from_points({{0}, {1}, {4}, {7.5}, {8.5}}, Norm::kEuclidean);
    const auto w = adversarial_witness(m, kmedian(), 2, 2.0);
    REQUIRE(w.has_value());
    CHECK(w->within_bounds);
    CHECK(validate_metric(w->perturbed.matrix(), 1e-12 * 8.5).ok);
    CHECK(w->proves_non_resilience == (w->within_bounds && w->optimum_changed));
  }
}

TEST_CASE("adversarial witnesses always respect the (alpha,1) bound") {
  SeededRng rng(61);
  int built = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + rng.below(6);
    const MetricSpace m = random_euclidean(rng, n);
    const std::size_t k = 2 + rng.below(n - 2);
    const auto w = adversarial_witness(m, kmedian(), k, 2.0);
    if (!w) continue;
    ++built;
    CHECK(w->within_bounds);
  }
  CHECK(built > 0);
}

TEST_CASE("generate_resilient_instance") {
  const GeneratedInstance a = generate_resilient_instance({12, 3, 4.0, 1.0, 42, 1});
  const GeneratedInstance b = generate_resilient_instance({12, 3, 4.0, 1.0, 42, 1});
  CHECK(a.metric.matrix() == b.metric.matrix());
  CHECK(a.planted == b.planted);
  CHECK(cluster_count(a.planted) == 3);
  const ResilienceProbeReport r = probe_resilience(a.metric, kmedian(), 3, 2.0, 100, 42);
  CHECK(r.certified);
  CHECK(r.base.best() == a.planted);

  const GeneratedInstance one = generate_resilient_instance({6, 1, 3.0, 1.0, 1, 2});
  CHECK(one.planted == std::vector<int>(6, 0));
  CHECK(probe_resilience(one.metric, kmedian(), 1, 2.0, 5, 1).certified);

  const GeneratedInstance single = generate_resilient_instance({5, 5, 3.0, 1.0, 3, 1});
  const OracleResult opt = brute_force_optimal(single.metric, kmedian(), 5);
  CHECK(opt.optimal_cost == 0.0);
  CHECK(opt.unique);
  CHECK(single.planted == std::vector<int>{0, 1, 2, 3, 4});

  CHECK_THROWS_AS(generate_resilient_instance({3, 4, 4.0, 1.0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_resilient_instance({4, 2, 2.0, 1.0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_resilient_instance({4, 2, 4.0, 0.0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_resilient_instance({4, 0, 4.0, 1.0, 1, 1}), std::invalid_argument);
}

TEST_CASE("center proximity and closer-to-center hold on certified instances") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GeneratedInstance inst = generate_resilient_instance({10, 2 + seed % 3, 4.0, 1.0, seed, 1 + seed % 2});
    const std::size_t k = cluster_count(inst.planted);
    const ResilienceProbeReport r = probe_resilience(inst.metric, kmeans(), k, 2.0, 20, seed);
    REQUIRE(r.certified);
    CHECK(check_center_proximity(r.base_clustering, inst.metric, 2.0).holds);
    CHECK(check_closer_to_own_center(r.base_clustering, inst.metric).holds);
  }
}
