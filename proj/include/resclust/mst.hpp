#pragma once

#include <vector>

#include "resclust/metric.hpp"

namespace resclust {

struct TreeEdge {
  PointIndex u = 0;  // u < v
  PointIndex v = 0;
  double weight = 0.0;

  bool operator==(const TreeEdge&) const = default;
};

struct SpanningTree {
  std::size_t n = 0;
  std::vector<TreeEdge> edges;                    // Kruskal insertion order
  std::vector<std::vector<PointIndex>> adjacency;  // ascending neighbor lists

  double total_weight() const;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  // Returns false if x and y were already joined.
  bool unite(std::size_t x, std::size_t y);
  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
  std::size_t components_;
};

/// All pairs (i < j) sorted by (weight, i, j).
std::vector<TreeEdge> sorted_pair_edges(const MetricSpace& m);

/// Kruskal's minimum spanning tree, considering edges in (weight, i, j) order.
SpanningTree kruskal(const MetricSpace& m);

/// Kruskal stopped once `components` trees remain. Returns the forest edges.
std::vector<TreeEdge> kruskal_forest(const MetricSpace& m, std::size_t components);

/// True iff `members` induces a connected subgraph of the tree.
bool is_subtree_connected(const SpanningTree& t, std::span<const PointIndex> members);

}  // namespace resclust
