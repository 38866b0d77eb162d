#pragma once

#include <cstdint>
#include <vector>

#include "resclust/objective.hpp"
#include "resclust/tree_dp.hpp"

namespace resclust {

inline constexpr std::size_t kBruteForceCap = 13;
inline constexpr std::size_t kCenterEnumerationCap = 20;

/// Exhaustive-search result. Partitions are canonical: labels numbered by
/// smallest member, so identical partitions compare equal.
struct OracleResult {
  double optimal_cost = kInf;
  std::vector<std::vector<int>> optimal_partitions;  // sorted, distinct
  bool unique = false;
  std::uint64_t evaluated = 0;  // candidates scored

  const std::vector<int>& best() const { return optimal_partitions.front(); }
};

/// Scores every partition of the points into exactly k non-empty blocks
/// (restricted-growth strings). Throws when n exceeds `cap`.
OracleResult brute_force_optimal(const MetricSpace& m, const Objective& obj, std::size_t k,
                                 double tie_tol = kTieRelative, std::size_t cap = kBruteForceCap);

/// Scores every way to cut k-1 edges of the binarized tree so that each
/// component keeps at least one original point.
OracleResult tree_partition_optimal(const RootedBinaryTree& bt, const MetricSpace& m, const Objective& obj,
                                    std::size_t k, double tie_tol = kTieRelative, std::size_t cap = kBruteForceCap);

/// Sum-mode check: fixes each k-subset of centers and connects every point
/// to its cheapest center. Requires nondecreasing g.
OracleResult center_enumeration_optimal(const MetricSpace& m, const Objective& obj, std::size_t k,
                                        double tie_tol = kTieRelative, std::size_t cap = kCenterEnumerationCap);

/// Stirling number of the second kind S(n, k).
std::uint64_t stirling2(std::size_t n, std::size_t k);

}  // namespace resclust
