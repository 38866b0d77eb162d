#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "resclust/oracle.hpp"

namespace resclust {

/// (p, i, j): point p of cluster i is not alpha-times closer to c_i than to c_j.
struct ProximityViolation {
  PointIndex p = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  double d_p_ci = 0.0;
  double d_p_cj = 0.0;
};

struct ProximityReport {
  double alpha = 1.0;
  bool holds = true;
  std::vector<ProximityViolation> violations;
};

/// Flags every (p, j) with d(p, c_j) <= alpha * d(p, c_i), where i is p's cluster.
ProximityReport check_center_proximity(const Clustering& c, const MetricSpace& m, double alpha);

/// (u, v): u in cluster i is at least as close to v (in cluster j) as to c_i.
struct CloserViolation {
  PointIndex u = 0;
  PointIndex v = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  double d_u_ci = 0.0;
  double d_u_v = 0.0;
};

struct CloserReport {
  bool holds = true;
  std::vector<CloserViolation> violations;
};

/// Checks d(u, c_i) < d(u, v) for every u in C_i and every v outside C_i.
CloserReport check_closer_to_own_center(const Clustering& c, const MetricSpace& m);

struct AdversarialWitness {
  ProximityViolation violation;  // the violation the perturbation was built from
  double r_star = 0.0;
  MetricSpace perturbed;
  OracleResult perturbed_optimum;
  bool within_bounds = false;     // d/alpha <= d' <= d and d' is a metric
  bool optimum_changed = false;   // perturbed optimum is not uniquely the base partition
  bool proves_non_resilience = false;
};

/// Builds the single-edge shortening for the first usable proximity
/// violation of the oracle optimum and re-solves. Returns nullopt when the
/// optimum satisfies alpha-center proximity or no violation admits the
/// construction (r* = d(p, c_i) must lie in (0, d(p, c_j)]).
std::optional<AdversarialWitness> adversarial_witness(const MetricSpace& m, const Objective& obj, std::size_t k,
                                                      double alpha);

struct ProbeFailure {
  std::size_t trial = 0;       // 0 means the unperturbed instance (tied optimum)
  std::uint64_t seed = 0;
  std::vector<int> partition;  // a competing optimum
};

struct ResilienceProbeReport {
  std::size_t trials = 0;       // requested
  std::size_t trials_run = 0;
  double alpha = 1.0;
  double shrink_fraction = 1.0;
  std::uint64_t seed = 0;
  bool unique = false;
  bool stable = true;
  bool certified = false;
  std::optional<ProbeFailure> first_failure;
  OracleResult base;
  Clustering base_clustering;   // first base optimum with reported centers
  ProximityReport proximity;
};

/// Perturbation trial t (1-based) draws random_metric_perturbation with seed
/// `seed + t`.
ResilienceProbeReport probe_resilience(const MetricSpace& m, const Objective& obj, std::size_t k, double alpha,
                                       std::size_t trials, std::uint64_t seed, double shrink_fraction = 1.0);

struct GeneratedInstance {
  std::vector<std::vector<double>> points;
  MetricSpace metric;
  std::vector<int> planted;  // canonical labels
};

struct GeneratorParams {
  std::size_t n = 0;
  std::size_t k = 1;
  double margin = 4.0;
  double spread = 1.0;
  std::uint64_t seed = 0;
  std::size_t dim = 1;
};

/// Plants k well-separated groups; see the README for the layout rule.
GeneratedInstance generate_resilient_instance(const GeneratorParams& params);

/// Kruskal stopped at k components; canonical labels.
std::vector<int> single_linkage_baseline(const MetricSpace& m, std::size_t k);

}  // namespace resclust
