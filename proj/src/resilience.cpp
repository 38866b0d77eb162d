#include "resclust/resilience.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "resclust/random.hpp"

namespace resclust {

ProximityReport check_center_proximity(const Clustering& c, const MetricSpace& m, double alpha) {
  check_clustering(c, m.size());
  ProximityReport report;
  report.alpha = alpha;
  for (PointIndex p = 0; p < m.size(); ++p) {
    const auto i = static_cast<std::size_t>(c.assignment[p]);
    const double own = m(p, c.centers[i]);
    for (std::size_t j = 0; j < c.k(); ++j) {
      if (j == i) continue;
      const double other = m(p, c.centers[j]);
      if (other <= alpha * own) report.violations.push_back({p, i, j, own, other});
    }
  }
  report.holds = report.violations.empty();
  return report;
}

CloserReport check_closer_to_own_center(const Clustering& c, const MetricSpace& m) {
  check_clustering(c, m.size());
  CloserReport report;
  for (PointIndex u = 0; u < m.size(); ++u) {
    const auto i = static_cast<std::size_t>(c.assignment[u]);
    const double own = m(u, c.centers[i]);
    for (PointIndex v = 0; v < m.size(); ++v) {
      const auto j = static_cast<std::size_t>(c.assignment[v]);
      if (j == i) continue;
      if (own >= m(u, v)) report.violations.push_back({u, v, i, j, own, m(u, v)});
    }
  }
  report.holds = report.violations.empty();
  return report;
}

namespace {

bool is_alpha_one_perturbation(const MetricSpace& base, const MetricSpace& perturbed, double alpha) {
  const std::size_t n = base.size();
  double scale = 0.0;
  for (double v : base.matrix().data()) scale = std::max(scale, v);
  if (!validate_metric(perturbed.matrix(), 1e-12 * std::max(1.0, scale)).ok) return false;
  for (PointIndex u = 0; u < n; ++u) {
    for (PointIndex v = 0; v < n; ++v) {
      const double d = base(u, v);
      const double dp = perturbed(u, v);
      const double slack = 1e-12 * std::max(1.0, d);
      if (dp > d + slack || dp < d / alpha - slack) return false;
    }
  }
  return true;
}

bool uniquely(const OracleResult& r, const std::vector<int>& partition) {
  return r.unique && r.best() == partition;
}

}  // namespace

std::optional<AdversarialWitness> adversarial_witness(const MetricSpace& m, const Objective& obj, std::size_t k,
                                                      double alpha) {
  if (!(alpha >= 1.0)) throw std::invalid_argument("adversarial_witness: alpha must be >= 1");
  const OracleResult base = brute_force_optimal(m, obj, k);
  const Clustering clustering = make_clustering(base.best(), m, obj);
  const ProximityReport proximity = check_center_proximity(clustering, m, alpha);
  for (const ProximityViolation& v : proximity.violations) {
    const double r_star = v.d_p_ci;
    if (!(r_star > 0.0) || r_star > v.d_p_cj) continue;
    MetricSpace perturbed = adversarial_perturbation(m, v.p, clustering.centers[v.j], r_star);
    OracleResult optimum = brute_force_optimal(perturbed, obj, k);
    AdversarialWitness w{v, r_star, std::move(perturbed), std::move(optimum)};
    w.within_bounds = is_alpha_one_perturbation(m, w.perturbed, alpha);
    w.optimum_changed = !uniquely(w.perturbed_optimum, base.best());
    w.proves_non_resilience = w.within_bounds && w.optimum_changed;
    return w;
  }
  return std::nullopt;
}

ResilienceProbeReport probe_resilience(const MetricSpace& m, const Objective& obj, std::size_t k, double alpha,
                                       std::size_t trials, std::uint64_t seed, double shrink_fraction) {
  if (trials == 0) throw std::invalid_argument("probe_resilience: trials must be >= 1");
  if (!(alpha >= 1.0)) throw std::invalid_argument("probe_resilience: alpha must be >= 1");
  ResilienceProbeReport report;
  report.trials = trials;
  report.alpha = alpha;
  report.seed = seed;
  report.shrink_fraction = shrink_fraction;
  report.base = brute_force_optimal(m, obj, k);
  report.unique = report.base.unique;
  report.base_clustering = make_clustering(report.base.best(), m, obj);
  report.proximity = check_center_proximity(report.base_clustering, m, alpha);

  // With a tied base optimum the whole optimal set is compared.
  for (std::size_t t = 1; t <= trials; ++t) {
    const std::uint64_t trial_seed = seed + t;
    const MetricSpace perturbed = random_metric_perturbation(m, alpha, trial_seed, shrink_fraction);
    const OracleResult opt = brute_force_optimal(perturbed, obj, k);
    report.trials_run = t;
    if (opt.optimal_partitions != report.base.optimal_partitions) {
      const auto differing = std::find_if(opt.optimal_partitions.begin(), opt.optimal_partitions.end(),
                                          [&](const auto& p) { return p != report.base.best(); });
      report.first_failure = ProbeFailure{t, trial_seed,
                                          differing != opt.optimal_partitions.end() ? *differing : opt.best()};
      break;
    }
  }
  report.stable = !report.first_failure.has_value();
  report.certified = report.stable && report.unique && report.proximity.holds;
  return report;
}

GeneratedInstance generate_resilient_instance(const GeneratorParams& params) {
  const auto [n, k, margin, spread, seed, dim] = params;
  if (k < 1 || n < k) throw std::invalid_argument("generate: need n >= k >= 1");
  if (!(margin > 2.0) || !std::isfinite(margin)) throw std::invalid_argument("generate: margin must exceed 2");
  if (!(spread > 0.0) || !std::isfinite(spread)) throw std::invalid_argument("generate: spread must be positive");
  if (dim < 1) throw std::invalid_argument("generate: dimension must be >= 1");

  SeededRng rng(seed);
  // Sites sit on the first axis, gap apart; each point lies within `spread`
  // (Euclidean) of its site.
  const double gap = margin * 2.0 * spread * static_cast<double>(n + 1);
  const double half_box = spread / std::sqrt(static_cast<double>(dim));

  std::vector<int> site(n);
  for (std::size_t p = 0; p < n; ++p) site[p] = p < k ? static_cast<int>(p) : static_cast<int>(rng.below(k));
  for (std::size_t p = n; p > 1; --p) std::swap(site[p - 1], site[rng.below(p)]);

  std::vector<std::vector<double>> points(n, std::vector<double>(dim, 0.0));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t t = 0; t < dim; ++t) points[p][t] = rng.uniform(-half_box, half_box);
    points[p][0] += gap * static_cast<double>(site[p]);
  }
  MetricSpace metric = from_points(points, Norm::kEuclidean);
  return {std::move(points), std::move(metric), canonical_labels(site)};
}

std::vector<int> single_linkage_baseline(const MetricSpace& m, std::size_t k) {
  const std::size_t n = m.size();
  if (k < 1 || k > n) throw std::invalid_argument("single_linkage_baseline: k must satisfy 1 <= k <= n");
  DisjointSets sets(n);
  for (const TreeEdge& e : kruskal_forest(m, k)) sets.unite(e.u, e.v);
  std::vector<int> labels(n);
  for (PointIndex p = 0; p < n; ++p) labels[p] = static_cast<int>(sets.find(p));
  return canonical_labels(labels);
}

}  // namespace resclust
