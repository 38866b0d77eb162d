#pragma once

#include <cstdint>
#include <vector>

#include "resclust/mst.hpp"
#include "resclust/objective.hpp"

namespace resclust {

using NodeIndex = std::size_t;

/// A spanning tree rooted at an original point, with dummy nodes inserted so
/// that every node has at most two children.
///
/// Nodes 0..n-1 are the original points (node id == point index); dummies
/// take ids n..N-1. A dummy never hosts a center and contributes nothing to
/// assignment cost. Subtree membership is answered with preorder intervals.
struct RootedBinaryTree {
  std::size_t n_original = 0;
  NodeIndex root = 0;
  std::vector<NodeIndex> parent;                 // kNoIndex for the root
  std::vector<std::vector<NodeIndex>> children;  // at most 2 per node
  std::vector<char> is_dummy;
  std::vector<PointIndex> orig_index;  // dummies map to the vertex they were split from

  std::vector<NodeIndex> preorder;
  std::vector<std::size_t> enter;  // preorder position of the node
  std::vector<std::size_t> exit;   // one past the last preorder position in its subtree
  std::vector<std::size_t> original_count;  // original points in T_u

  // Original points listed in preorder; T_u's originals occupy
  // [original_begin[u], original_begin[u] + original_count[u]).
  std::vector<PointIndex> original_preorder;
  std::vector<std::size_t> original_begin;

  std::size_t size() const { return parent.size(); }
  std::size_t dummy_count() const { return size() - n_original; }

  /// True iff node v lies in the subtree rooted at u.
  bool in_subtree(NodeIndex v, NodeIndex u) const { return enter[u] <= enter[v] && enter[v] < exit[u]; }

  std::span<const PointIndex> originals_in(NodeIndex u) const {
    return {original_preorder.data() + original_begin[u], original_count[u]};
  }
};

RootedBinaryTree root_and_binarize(const SpanningTree& t, PointIndex root_choice = 0);

/// Merges every dummy into its parent and returns the resulting edge list,
/// each edge as (smaller, larger) point index, sorted.
std::vector<std::pair<PointIndex, PointIndex>> contract_dummies(const RootedBinaryTree& bt);

struct DpOptions {
  // Apply the Sum-mode opening-cost subtraction even in Max mode. Only
  // meaningful when f == 0; used to check that the Max-mode dedup is a no-op.
  bool force_subtractive_dedup = false;
};

/// Full DP output, including the partition of the binarized tree.
struct DpSolution {
  double dp_cost = kInf;
  Clustering clustering;              // canonical labels, smallest-index optimal centers
  std::vector<int> node_part;         // part id per tree node, dummies included
  std::vector<PointIndex> part_center;  // center chosen by the DP per part id
};

DpSolution dp_solve(const RootedBinaryTree& bt, const MetricSpace& m, const Objective& obj, std::size_t k,
                    const DpOptions& options = {});

/// Optimal partition of the tree into exactly k connected parts with centers.
Clustering dp_cluster(const RootedBinaryTree& bt, const MetricSpace& m, const Objective& obj, std::size_t k,
                      const DpOptions& options = {});

/// Same value as dp_cluster without keeping backpointers; child tables are
/// released as soon as their parent is computed.
double dp_cost_only(const RootedBinaryTree& bt, const MetricSpace& m, const Objective& obj, std::size_t k,
                    const DpOptions& options = {});

/// Convenience: Kruskal MST, rooting and binarization, then the DP.
Clustering solve_tree_clustering(const MetricSpace& m, const Objective& obj, std::size_t k, PointIndex root = 0);

}  // namespace resclust
