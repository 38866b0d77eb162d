#include "resclust/mst.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace resclust {

double SpanningTree::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges) total += e.weight;
  return total;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0), components_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool DisjointSets::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (rank_[x] < rank_[y]) std::swap(x, y);
  parent_[y] = x;
  if (rank_[x] == rank_[y]) ++rank_[x];
  --components_;
  return true;
}

std::vector<TreeEdge> sorted_pair_edges(const MetricSpace& m) {
  const std::size_t n = m.size();
  std::vector<TreeEdge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = i + 1; j < n; ++j) edges.push_back({i, j, m(i, j)});
  }
  std::sort(edges.begin(), edges.end(), [](const TreeEdge& a, const TreeEdge& b) {
    return std::tie(a.weight, a.u, a.v) < std::tie(b.weight, b.u, b.v);
  });
  return edges;
}

std::vector<TreeEdge> kruskal_forest(const MetricSpace& m, std::size_t components) {
  const std::size_t n = m.size();
  if (components < 1 || components > n) throw std::invalid_argument("kruskal_forest: invalid component count");
  std::vector<TreeEdge> out;
  if (components == n) return out;
  DisjointSets sets(n);
  for (const TreeEdge& e : sorted_pair_edges(m)) {
    if (sets.unite(e.u, e.v)) {
      out.push_back(e);
      if (sets.components() == components) break;
    }
  }
  return out;
}

SpanningTree kruskal(const MetricSpace& m) {
  SpanningTree t;
  t.n = m.size();
  t.edges = kruskal_forest(m, 1);
  t.adjacency.assign(t.n, {});
  for (const auto& e : t.edges) {
    t.adjacency[e.u].push_back(e.v);
    t.adjacency[e.v].push_back(e.u);
  }
  for (auto& nbrs : t.adjacency) std::sort(nbrs.begin(), nbrs.end());
  return t;
}

bool is_subtree_connected(const SpanningTree& t, std::span<const PointIndex> members) {
  if (members.empty()) throw std::invalid_argument("is_subtree_connected: empty member set");
  std::vector<char> in_set(t.n, 0);
  for (PointIndex p : members) {
    if (p >= t.n) throw std::invalid_argument("is_subtree_connected: index out of range");
    in_set[p] = 1;
  }
  std::vector<char> seen(t.n, 0);
  std::vector<PointIndex> stack{members.front()};
  seen[members.front()] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const PointIndex u = stack.back();
    stack.pop_back();
    ++reached;
    for (PointIndex v : t.adjacency[u]) {
      if (in_set[v] && !seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  const auto distinct = static_cast<std::size_t>(std::count(in_set.begin(), in_set.end(), 1));
  return reached == distinct;
}

}  // namespace resclust
