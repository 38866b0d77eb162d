#include "resclust/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace resclust {

namespace {

// Tracks the minimum and every candidate within tie tolerance of it.
class MinimizerSet {
 public:
  explicit MinimizerSet(double rel) : rel_(rel) {}

  template <typename MakeLabels>
  void offer(double cost, MakeLabels&& make_labels) {
    if (cost < best_) {
      best_ = cost;
      std::erase_if(kept_, [this](const auto& e) { return !within_tie(e.first, best_, rel_); });
    }
    if (within_tie(cost, best_, rel_)) kept_.emplace_back(cost, make_labels());
  }

  OracleResult finish(std::uint64_t evaluated) && {
    OracleResult out;
    out.optimal_cost = best_;
    out.evaluated = evaluated;
    for (auto& [cost, labels] : kept_) {
      if (within_tie(cost, best_, rel_)) out.optimal_partitions.push_back(std::move(labels));
    }
    std::sort(out.optimal_partitions.begin(), out.optimal_partitions.end());
    out.optimal_partitions.erase(std::unique(out.optimal_partitions.begin(), out.optimal_partitions.end()),
                                 out.optimal_partitions.end());
    out.unique = out.optimal_partitions.size() == 1;
    return out;
  }

 private:
  double rel_;
  double best_ = kInf;
  std::vector<std::pair<double, std::vector<int>>> kept_;
};

void check_k(std::size_t k, std::size_t n) {
  if (k == 0 || k > n) throw std::invalid_argument("oracle: k must satisfy 1 <= k <= n");
}

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw std::invalid_argument("oracle: n = " + std::to_string(n) + " exceeds the enumeration cap of " +
                                std::to_string(cap));
  }
}

// Calls visit(chosen) for every ascending k-subset of [0, n).
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    visit(static_cast<const std::vector<std::size_t>&>(idx));
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

}  // namespace

OracleResult brute_force_optimal(const MetricSpace& m, const Objective& obj, std::size_t k, double tie_tol,
                                 std::size_t cap) {
  const std::size_t n = m.size();
  check_cap(n, cap);
  check_k(k, n);

  // Cost of every non-empty subset, indexed by bitmask.
  std::vector<double> subset_cost(std::size_t{1} << n, kInf);
  std::vector<PointIndex> members;
  for (std::size_t mask = 1; mask < subset_cost.size(); ++mask) {
    members.clear();
    for (PointIndex p = 0; p < n; ++p) {
      if (mask >> p & 1u) members.push_back(p);
    }
    subset_cost[mask] = cluster_cost(members, m, obj).cost;
  }

  MinimizerSet found(tie_tol);
  std::uint64_t evaluated = 0;
  std::vector<int> labels(n, 0);
  std::vector<std::size_t> block_mask(k, 0);

  // Restricted-growth strings with exactly k blocks.
  auto recurse = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      if (used != k) return;
      ++evaluated;
      double cost = subset_cost[block_mask[0]];
      for (std::size_t b = 1; b < k; ++b) cost = obj.combine(cost, subset_cost[block_mask[b]]);
      found.offer(cost, [&labels] { return labels; });
      return;
    }
    if (n - i < k - used) return;
    for (std::size_t b = 0; b < used; ++b) {
      labels[i] = static_cast<int>(b);
      block_mask[b] |= std::size_t{1} << i;
      self(self, i + 1, used);
      block_mask[b] &= ~(std::size_t{1} << i);
    }
    if (used < k) {
      labels[i] = static_cast<int>(used);
      block_mask[used] = std::size_t{1} << i;
      self(self, i + 1, used + 1);
      block_mask[used] = 0;
    }
  };
  recurse(recurse, 0, 0);
  return std::move(found).finish(evaluated);
}

OracleResult tree_partition_optimal(const RootedBinaryTree& bt, const MetricSpace& m, const Objective& obj,
                                    std::size_t k, double tie_tol, std::size_t cap) {
  const std::size_t n = m.size();
  if (bt.n_original != n) throw std::invalid_argument("oracle: tree and metric sizes differ");
  check_cap(n, cap);
  check_k(k, n);

  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  for (NodeIndex v = 0; v < bt.size(); ++v) {
    if (bt.parent[v] != kNoIndex) edges.emplace_back(bt.parent[v], v);
  }

  MinimizerSet found(tie_tol);
  std::uint64_t evaluated = 0;
  std::vector<char> cut(edges.size());
  for_each_combination(edges.size(), k - 1, [&](const std::vector<std::size_t>& chosen) {
    std::fill(cut.begin(), cut.end(), 0);
    for (std::size_t e : chosen) cut[e] = 1;
    DisjointSets sets(bt.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!cut[e]) sets.unite(edges[e].first, edges[e].second);
    }
    // Every component must keep an original point.
    std::vector<int> label_of_root(bt.size(), -1);
    std::vector<int> labels(n);
    int next = 0;
    for (PointIndex p = 0; p < n; ++p) {
      const std::size_t root = sets.find(p);
      if (label_of_root[root] < 0) label_of_root[root] = next++;
      labels[p] = label_of_root[root];
    }
    if (static_cast<std::size_t>(next) != k) return;
    ++evaluated;
    const double cost = clustering_cost(labels, m, obj).cost;
    found.offer(cost, [&labels] { return labels; });
  });
  return std::move(found).finish(evaluated);
}

OracleResult center_enumeration_optimal(const MetricSpace& m, const Objective& obj, std::size_t k, double tie_tol,
                                        std::size_t cap) {
  if (obj.mode != Aggregation::kSum) throw std::invalid_argument("center enumeration supports Sum-mode objectives only");
  const std::size_t n = m.size();
  check_cap(n, cap);
  check_k(k, n);

  MinimizerSet found(tie_tol);
  std::uint64_t evaluated = 0;
  std::vector<int> labels(n);
  std::vector<int> center_slot(n, -1);
  for_each_combination(n, k, [&](const std::vector<std::size_t>& centers) {
    ++evaluated;
    double cost = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
      cost += obj.f(centers[s]);
      center_slot[centers[s]] = static_cast<int>(s);
    }
    for (PointIndex u = 0; u < n; ++u) {
      if (center_slot[u] >= 0) {
        labels[u] = center_slot[u];
        cost += obj.g(u, 0.0);
        continue;
      }
      double best = kInf;
      int slot = 0;
      for (std::size_t s = 0; s < k; ++s) {
        const double v = obj.g(u, m(u, centers[s]));
        if (v < best) best = v, slot = static_cast<int>(s);
      }
      labels[u] = slot;
      cost += best;
    }
    for (std::size_t c : centers) center_slot[c] = -1;
    found.offer(cost, [&labels] { return canonical_labels(labels); });
  });
  return std::move(found).finish(evaluated);
}

std::uint64_t stirling2(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  // table[j] holds S(i, j) for the current row i.
  std::vector<std::uint64_t> table(k + 1, 0);
  table[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = std::min(i, k); j >= 1; --j) table[j] = j * table[j] + table[j - 1];
    table[0] = 0;
  }
  return table[k];
}

}  // namespace resclust
