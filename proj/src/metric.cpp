#include "resclust/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "resclust/random.hpp"

namespace resclust {

namespace {

void require_square_symmetric_nonneg(const SquareMatrix& w, const char* what) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (w(i, i) != 0.0) throw std::invalid_argument(std::string(what) + ": nonzero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = w(i, j);
      if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
      if (v < 0.0) throw std::invalid_argument(std::string(what) + ": negative entry");
      if (v != w(j, i)) throw std::invalid_argument(std::string(what) + ": asymmetric input");
    }
  }
}

}  // namespace

MetricSpace::MetricSpace(SquareMatrix dist, double eps, std::vector<std::string> labels)
    : dist_(std::move(dist)), labels_(std::move(labels)) {
  if (dist_.size() == 0) throw std::invalid_argument("metric space must have at least one point");
  if (!labels_.empty() && labels_.size() != dist_.size()) {
    throw std::invalid_argument("label count does not match point count");
  }
  const ValidationReport report = validate_metric(dist_, eps);
  if (!report.ok) {
    const MetricViolation& v = report.violations.front();
    throw std::invalid_argument("not a metric: " + to_string(v.kind) + " at (" + std::to_string(v.i) +
                                "," + std::to_string(v.j) + ")");
  }
}

MetricSpace make_unchecked_metric(SquareMatrix dist) {
  return MetricSpace(MetricSpace::Unchecked{}, std::move(dist));
}

MetricSpace from_points(const std::vector<std::vector<double>>& coords, Norm norm) {
  if (coords.empty()) throw std::invalid_argument("from_points: empty input");
  const std::size_t dim = coords.front().size();
  if (dim == 0) throw std::invalid_argument("from_points: zero-dimensional points");
  for (const auto& c : coords) {
    if (c.size() != dim) throw std::invalid_argument("from_points: dimension mismatch");
    for (double x : c) {
      if (!std::isfinite(x)) throw std::invalid_argument("from_points: non-finite coordinate");
    }
  }
  const std::size_t n = coords.size();
  SquareMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < dim; ++t) {
        const double diff = coords[i][t] - coords[j][t];
        acc += norm == Norm::kEuclidean ? diff * diff : std::abs(diff);
      }
      const double v = norm == Norm::kEuclidean ? std::sqrt(acc) : acc;
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return make_unchecked_metric(std::move(d));
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kAsymmetry: return "asymmetry";
    case ViolationKind::kNonzeroDiagonal: return "nonzero_diagonal";
    case ViolationKind::kNegative: return "negative";
    case ViolationKind::kNonFinite: return "non_finite";
    case ViolationKind::kTriangle: return "triangle";
  }
  return "unknown";
}

ValidationReport validate_metric(const SquareMatrix& dist, double eps) {
  if (eps < 0.0) throw std::invalid_argument("validate_metric: eps must be >= 0");
  ValidationReport report;
  report.n = dist.size();
  report.eps = eps;
  const std::size_t n = dist.size();
  auto& out = report.violations;
  bool all_finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (dist(i, i) != 0.0) out.push_back({ViolationKind::kNonzeroDiagonal, i, i, kNoIndex, dist(i, i)});
    for (std::size_t j = 0; j < n; ++j) {
      const double v = dist(i, j);
      if (!std::isfinite(v)) {
        out.push_back({ViolationKind::kNonFinite, i, j, kNoIndex, v});
        all_finite = false;
        continue;
      }
      if (v < 0.0) out.push_back({ViolationKind::kNegative, i, j, kNoIndex, v});
      if (i < j && v != dist(j, i)) out.push_back({ViolationKind::kAsymmetry, i, j, kNoIndex, v - dist(j, i)});
    }
  }
  if (all_finite) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dij = dist(i, j);
        for (std::size_t m = 0; m < n; ++m) {
          if (m == i || m == j) continue;
          const double via = dist(i, m) + dist(m, j);
          if (dij > via + eps) out.push_back({ViolationKind::kTriangle, i, j, m, dij - via});
        }
      }
    }
  }
  report.ok = out.empty();
  return report;
}

MetricSpace metric_closure(const SquareMatrix& weights) {
  if (weights.size() == 0) throw std::invalid_argument("metric_closure: empty input");
  require_square_symmetric_nonneg(weights, "metric_closure");
  const std::size_t n = weights.size();
  SquareMatrix d = weights;
  // Floyd-Warshall; symmetric updates keep the matrix exactly symmetric. Rounding can leave a
  // triangle off by an ulp after one sweep, so sweep until nothing changes: the result is then
  // an exact fixed point and the closure is idempotent bit for bit.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t i = 0; i < n; ++i) {
        const double dim = d(i, m);
        for (std::size_t j = i + 1; j < n; ++j) {
          const double via = dim + d(m, j);
          if (via < d(i, j)) {
            d(i, j) = via;
            d(j, i) = via;
            changed = true;
          }
        }
      }
    }
  }
  return make_unchecked_metric(std::move(d));
}

MetricSpace adversarial_perturbation(const MetricSpace& m, PointIndex p, PointIndex cj, double r_star) {
  const std::size_t n = m.size();
  if (p >= n || cj >= n) throw std::invalid_argument("adversarial_perturbation: point index out of range");
  if (p == cj) throw std::invalid_argument("adversarial_perturbation: p must differ from c_j");
  if (!(r_star > 0.0)) throw std::invalid_argument("adversarial_perturbation: r_star must be positive");
  if (r_star > m(p, cj)) throw std::invalid_argument("adversarial_perturbation: r_star exceeds d(p, c_j)");
  SquareMatrix d(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double direct = m(u, v);
      const double via_uv = m(u, p) + r_star + m(cj, v);
      const double via_vu = m(v, p) + r_star + m(cj, u);
      const double w = std::min({direct, via_uv, via_vu});
      d(u, v) = w;
      d(v, u) = w;
    }
  }
  return make_unchecked_metric(std::move(d));
}

MetricSpace random_metric_perturbation(const MetricSpace& m, double alpha, std::uint64_t seed,
                                       double shrink_fraction) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("random_metric_perturbation: alpha must be >= 1");
  }
  if (!(shrink_fraction >= 0.0 && shrink_fraction <= 1.0)) {
    throw std::invalid_argument("random_metric_perturbation: shrink_fraction must be in [0, 1]");
  }
  const std::size_t n = m.size();
  const std::size_t pairs = n * (n - 1) / 2;
  const auto selected = static_cast<std::size_t>(std::llround(shrink_fraction * static_cast<double>(pairs)));
  if (alpha == 1.0 || selected == 0) return m;

  // Pair index t enumerates (i, j), i < j, row by row.
  std::vector<std::pair<PointIndex, PointIndex>> pair_of(pairs);
  for (std::size_t i = 0, t = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pair_of[t++] = {i, j};
  }
  std::vector<std::size_t> order(pairs);
  std::iota(order.begin(), order.end(), std::size_t{0});

  SeededRng rng(seed);
  SquareMatrix w = m.matrix();
  const double lo = 1.0 / alpha;
  // Partial Fisher-Yates: the first `selected` slots form the chosen subset.
  for (std::size_t s = 0; s < selected; ++s) {
    const std::size_t pick = s + static_cast<std::size_t>(rng.below(pairs - s));
    std::swap(order[s], order[pick]);
    const auto [i, j] = pair_of[order[s]];
    const double factor = lo + (1.0 - lo) * rng.uniform01();
    w(i, j) *= factor;
    w(j, i) = w(i, j);
  }
  return metric_closure(w);
}

MetricSpace scale_metric(const MetricSpace& m, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("scale_metric: lambda must be > 0");
  SquareMatrix d = m.matrix();
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d(i, j) *= lambda;
  }
  return make_unchecked_metric(std::move(d));
}

}  // namespace resclust
