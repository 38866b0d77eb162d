#include <doctest.h>

#include "resclust/oracle.hpp"
#include "support/test_support.hpp"

using namespace resclust;
using namespace resclust::testing;

TEST_CASE("brute_force_optimal examples") {
  const OracleResult l4 = brute_force_optimal(line4(), kmedian(), 2);
  CHECK(l4.optimal_cost == 2.0);
  CHECK(l4.unique);
  CHECK(l4.best() == std::vector<int>{0, 0, 1, 1});
  CHECK(l4.evaluated == 7);

  // {0,1|2} and {0|1,2} both cost 1; {0,2|1} costs 2.
  const OracleResult l3 = brute_force_optimal(line3(), kmedian(), 2);
  CHECK(l3.optimal_cost == 1.0);
  CHECK_FALSE(l3.unique);
  CHECK(l3.optimal_partitions == std::vector<std::vector<int>>{{0, 0, 1}, {0, 1, 1}});

  SeededRng rng(3);
  const MetricSpace m = random_euclidean(rng, 7);
  const OracleResult singletons = brute_force_optimal(m, kmedian(), 7);
  CHECK(singletons.optimal_cost == 0.0);
  CHECK(singletons.unique);
}

TEST_CASE("brute_force_optimal guards") {
  SeededRng rng(1);
  const MetricSpace big = random_euclidean(rng, 14);
  CHECK_THROWS_AS(brute_force_optimal(big, kmedian(), 2), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_optimal(line4(), kmedian(), 0), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_optimal(line4(), kmedian(), 5), std::invalid_argument);
}

TEST_CASE("brute_force_optimal matches a scan over independently enumerated partitions") {
  SeededRng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    const std::size_t k = 1 + rng.below(n);
    const MetricSpace m = random_euclidean(rng, n);
    for (const Objective& obj : {kmedian(), kcenter()}) {
      double best = kInf;
      for (const auto& p : all_partitions(n, k)) best = std::min(best, clustering_cost(p, m, obj).cost);
      CHECK(close_rel(brute_force_optimal(m, obj, k).optimal_cost, best, 1e-12));
    }
  }
}

TEST_CASE("partition counts equal Stirling numbers") {
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(8, 3) == 966);
  CHECK(stirling2(3, 5) == 0);
  SeededRng rng(2);
  for (std::size_t n = 1; n <= 8; ++n) {
    const MetricSpace m = random_euclidean(rng, n);
    for (std::size_t k = 1; k <= n; ++k) {
      CHECK(brute_force_optimal(m, kmedian(), k).evaluated == stirling2(n, k));
      CHECK(all_partitions(n, k).size() == stirling2(n, k));
    }
  }
}

TEST_CASE("tree_partition_optimal examples") {
  const MetricSpace l4 = line4();
  const RootedBinaryTree bt = root_and_binarize(kruskal(l4), 0);
  // Cutting (0,1), (1,2), (2,3) costs 11, 2, 11.
  const OracleResult r = tree_partition_optimal(bt, l4, kmedian(), 2);
  CHECK(r.optimal_cost == 2.0);
  CHECK(r.unique);
  CHECK(r.best() == std::vector<int>{0, 0, 1, 1});
  CHECK(r.evaluated == 3);
  CHECK(tree_partition_optimal(bt, l4, kmedian(), 1).optimal_cost == 20.0);
}

TEST_CASE("center_enumeration_optimal") {
  const OracleResult l4 = center_enumeration_optimal(line4(), kmedian(), 2);
  CHECK(l4.optimal_cost == 2.0);
  CHECK(l4.evaluated == 6);
  CHECK(l4.best() == std::vector<int>{0, 0, 1, 1});

  const Objective fl = facility_location({1.0, 2.0, 3.0, 4.0});
  CHECK(center_enumeration_optimal(line4(), fl, 4).optimal_cost == 10.0);
  CHECK_THROWS_AS(center_enumeration_optimal(line4(), kcenter(), 2), std::invalid_argument);

  SeededRng rng(1);
  CHECK_THROWS_AS(center_enumeration_optimal(random_euclidean(rng, 21), kmedian(), 2), std::invalid_argument);
}

TEST_CASE("center enumeration agrees with partition enumeration") {
  SeededRng rng(44);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.below(10);
    const std::size_t k = 1 + rng.below(n);
    const MetricSpace m = trial % 2 ? random_graph_metric(rng, n) : random_euclidean(rng, n);
    std::vector<double> open(n);
    for (auto& f : open) f = rng.uniform(0.0, 5.0);
    for (const Objective& obj : {kmedian(), kmeans(), facility_location(open)}) {
      CHECK(close_rel(center_enumeration_optimal(m, obj, k).optimal_cost, brute_force_optimal(m, obj, k).optimal_cost,
                      1e-9));
    }
  }
}

TEST_CASE("tree partitions never beat the global optimum") {
  SeededRng rng(46);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.below(9);
    const std::size_t k = 1 + rng.below(n);
    const MetricSpace m = random_graph_metric(rng, n);
    const RootedBinaryTree bt = root_and_binarize(kruskal(m), 0);
    CHECK(tree_partition_optimal(bt, m, kmeans(), k).optimal_cost >=
          brute_force_optimal(m, kmeans(), k).optimal_cost - 1e-9);
  }
}
