#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resclust/numeric.hpp"

namespace resclust {

inline constexpr double kDefaultTriangleEps = 1e-9;

/// Dense row-major square matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// A finite metric space over points 0..n-1.
///
/// Construction checks finiteness, nonnegativity, the zero diagonal and exact
/// symmetry. The triangle inequality is checked to within `eps`; use
/// validate_metric for a full report instead of an exception.
class MetricSpace {
 public:
  explicit MetricSpace(SquareMatrix dist, double eps = kDefaultTriangleEps,
                       std::vector<std::string> labels = {});

  std::size_t size() const { return dist_.size(); }
  double operator()(PointIndex i, PointIndex j) const { return dist_(i, j); }
  std::span<const double> row(PointIndex i) const { return dist_.row(i); }
  const SquareMatrix& matrix() const { return dist_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  struct Unchecked {};
  MetricSpace(Unchecked, SquareMatrix dist) : dist_(std::move(dist)) {}
  friend MetricSpace make_unchecked_metric(SquareMatrix dist);

  SquareMatrix dist_;
  std::vector<std::string> labels_;
};

// Skips the O(n^3) triangle scan. For outputs of operations that produce
// metrics by construction.
MetricSpace make_unchecked_metric(SquareMatrix dist);

enum class Norm { kEuclidean, kManhattan };

MetricSpace from_points(const std::vector<std::vector<double>>& coords, Norm norm);

enum class ViolationKind { kAsymmetry, kNonzeroDiagonal, kNegative, kNonFinite, kTriangle };

std::string to_string(ViolationKind kind);

/// One axiom violation. For triangle violations d(i,j) > d(i,m) + d(m,j) + eps.
struct MetricViolation {
  ViolationKind kind;
  PointIndex i = 0;
  PointIndex j = 0;
  PointIndex m = kNoIndex;
  double value = 0.0;
};

struct ValidationReport {
  bool ok = true;
  std::size_t n = 0;
  double eps = 0.0;
  std::vector<MetricViolation> violations;
};

ValidationReport validate_metric(const SquareMatrix& dist, double eps = kDefaultTriangleEps);

/// Shortest-path metric of the complete graph with the given edge lengths.
MetricSpace metric_closure(const SquareMatrix& weights);

/// Shortens edge (p, cj) to r_star and returns the induced shortest-path
/// metric, evaluated by the closed-form three-term minimum.
MetricSpace adversarial_perturbation(const MetricSpace& m, PointIndex p, PointIndex cj, double r_star);

/// Scales a seeded random subset of pairs by factors in [1/alpha, 1], then
/// takes the metric closure. The result d' satisfies d/alpha <= d' <= d.
MetricSpace random_metric_perturbation(const MetricSpace& m, double alpha, std::uint64_t seed,
                                       double shrink_fraction);

MetricSpace scale_metric(const MetricSpace& m, double lambda);

}  // namespace resclust
