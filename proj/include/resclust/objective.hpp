#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "resclust/metric.hpp"

namespace resclust {

enum class Aggregation { kSum, kMax };

/// A natural center-based objective.
///
/// In Sum mode a cluster C with center c costs f(c) + sum_{u in C} g(u, d(u, c));
/// in Max mode it costs max(f(c), max_{u in C} g(u, d(u, c))). A clustering
/// costs the sum (resp. max) of its cluster costs.
///
/// g(u, .) must be nondecreasing. User-supplied f and g are called from
/// multiple threads and must be safe for concurrent invocation.
struct Objective {
  using OpenCost = std::function<double(PointIndex)>;
  using AssignCost = std::function<double(PointIndex, double)>;

  std::string name;
  OpenCost open_cost;
  AssignCost assign_cost;
  Aggregation mode = Aggregation::kSum;

  double f(PointIndex c) const { return open_cost(c); }
  double g(PointIndex u, double r) const { return assign_cost(u, r); }

  double combine(double a, double b) const { return mode == Aggregation::kSum ? a + b : std::max(a, b); }
};

Objective kmedian();
Objective kmeans();
Objective kcenter();
Objective facility_location(std::vector<double> opening_costs);

/// Builds a built-in objective by name ("kmedian", "kmeans", "kcenter",
/// "facility_location"). Facility location needs one opening cost per point.
Objective builtin_objective(const std::string& name, const std::vector<double>& opening_costs = {});

/// Wraps user callables. Samples g on a grid of radii for every point and
/// reports detected non-monotonicity through `warnings` without failing.
Objective custom_objective(std::string name, Objective::OpenCost f, Objective::AssignCost g, Aggregation mode,
                           std::size_t n, double max_radius, std::vector<std::string>* warnings = nullptr);

/// Returns human-readable descriptions of sampled points where g(u, .) decreases.
std::vector<std::string> check_monotone(const Objective& obj, std::size_t n, double max_radius,
                                        std::size_t samples = 64);

struct ClusterCost {
  double cost = kInf;
  std::vector<PointIndex> optimal_centers;  // ascending
};

/// Cost of one cluster with its best center chosen among the members.
ClusterCost cluster_cost(std::span<const PointIndex> members, const MetricSpace& m, const Objective& obj);

/// Cost of one cluster with a fixed center (which need not be a member).
double cluster_cost_with_center(std::span<const PointIndex> members, PointIndex center, const MetricSpace& m,
                                const Objective& obj);

/// A partition into k non-empty clusters with one center per cluster.
/// Cluster labels are 0-based here; the CLI reports them 1-based.
struct Clustering {
  std::vector<int> assignment;
  std::vector<PointIndex> centers;
  double cost = kInf;

  std::size_t k() const { return centers.size(); }
};

struct ClusteringCost {
  double cost = kInf;
  std::vector<PointIndex> centers;  // smallest-index optimal center per cluster
};

/// Number of clusters implied by an assignment; throws if a label in
/// [0, max label] is unused or negative.
std::size_t cluster_count(std::span<const int> assignment);

std::vector<std::vector<PointIndex>> members_by_cluster(std::span<const int> assignment);

ClusteringCost clustering_cost(std::span<const int> assignment, const MetricSpace& m, const Objective& obj);

double fixed_center_cost(std::span<const int> assignment, std::span<const PointIndex> centers, const MetricSpace& m,
                         const Objective& obj);

/// Builds a Clustering with optimal centers and the recomputed cost.
Clustering make_clustering(std::vector<int> assignment, const MetricSpace& m, const Objective& obj);

/// Throws if the clustering is malformed (empty cluster, center outside its cluster, size mismatch).
void check_clustering(const Clustering& c, std::size_t n);

/// Relabels so clusters are numbered by their smallest member.
std::vector<int> canonical_labels(std::span<const int> assignment);

/// Keeps the centers and moves each non-center point to a nearest center,
/// staying put on ties. The returned cost uses the same centers.
Clustering lloyd_improvement(const Clustering& c, const MetricSpace& m, const Objective& obj);

}  // namespace resclust
