#include <doctest.h>

#include "resclust/mst.hpp"
#include "support/test_support.hpp"

using namespace resclust;
using namespace resclust::testing;

namespace {

std::vector<std::pair<PointIndex, PointIndex>> endpoints(const SpanningTree& t) {
  std::vector<std::pair<PointIndex, PointIndex>> out;
  for (const auto& e : t.edges) out.emplace_back(e.u, e.v);
  return out;
}

}  // namespace

TEST_CASE("kruskal on small fixtures") {
  const SpanningTree path = kruskal(line3());
  CHECK(endpoints(path) == std::vector<std::pair<PointIndex, PointIndex>>{{0, 1}, {1, 2}});

  const SpanningTree l4 = kruskal(line4());
  CHECK(endpoints(l4) == std::vector<std::pair<PointIndex, PointIndex>>{{0, 1}, {2, 3}, {1, 2}});
  CHECK(l4.edges[2].weight == 9.0);
  CHECK(l4.total_weight() == 11.0);

  // Unit square 0-1-2-3: equal sides, ties broken by endpoint indices.
  const MetricSpace square = from_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, Norm::kEuclidean);
  CHECK(endpoints(kruskal(square)) == std::vector<std::pair<PointIndex, PointIndex>>{{0, 1}, {0, 3}, {1, 2}});

  const SpanningTree single = kruskal(from_points({{5}}, Norm::kEuclidean));
  CHECK(single.edges.empty());
  CHECK(single.adjacency.size() == 1);
}

TEST_CASE("kruskal weight equals exhaustive spanning-tree minimum") {
  SeededRng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    const MetricSpace m = trial % 2 ? random_euclidean(rng, n) : random_graph_metric(rng, n);
    const SpanningTree t = kruskal(m);
    CHECK(t.edges.size() == n - 1);
    CHECK(close_rel(t.total_weight(), min_spanning_weight_by_enumeration(m), 1e-12));
    std::vector<PointIndex> all(n);
    std::iota(all.begin(), all.end(), PointIndex{0});
    CHECK(is_subtree_connected(t, all));
  }
}

TEST_CASE("kruskal is deterministic") {
  SeededRng rng(4);
  const MetricSpace m = random_euclidean(rng, 40);
  CHECK(kruskal(m).edges == kruskal(m).edges);
}

TEST_CASE("is_subtree_connected") {
  const SpanningTree t = kruskal(line4());
  CHECK(is_subtree_connected(t, std::vector<PointIndex>{0, 1, 2, 3}));
  CHECK_FALSE(is_subtree_connected(t, std::vector<PointIndex>{0, 3}));
  CHECK(is_subtree_connected(t, std::vector<PointIndex>{2}));
  CHECK(is_subtree_connected(t, std::vector<PointIndex>{1, 2}));
  CHECK_THROWS_AS(is_subtree_connected(t, std::vector<PointIndex>{}), std::invalid_argument);
  CHECK_THROWS_AS(is_subtree_connected(t, std::vector<PointIndex>{7}), std::invalid_argument);
}

TEST_CASE("kruskal_forest stops at the requested component count") {
  const MetricSpace l4 = line4();
  CHECK(kruskal_forest(l4, 4).empty());
  CHECK(kruskal_forest(l4, 2).size() == 2);
  CHECK(kruskal_forest(l4, 1).size() == 3);
  CHECK_THROWS_AS(kruskal_forest(l4, 0), std::invalid_argument);
  CHECK_THROWS_AS(kruskal_forest(l4, 5), std::invalid_argument);

  DisjointSets sets(3);
  CHECK(sets.unite(0, 1));
  CHECK_FALSE(sets.unite(1, 0));
  CHECK(sets.components() == 2);
}
