#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace resclust {

using PointIndex = std::size_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr PointIndex kNoIndex = std::numeric_limits<PointIndex>::max();

// Relative tie tolerance with an absolute floor, used for "optimal" set membership.
inline constexpr double kTieRelative = 1e-9;
inline constexpr double kTieAbsolute = 1e-12;

inline double tie_tolerance(double reference, double rel = kTieRelative) {
  return std::max(kTieAbsolute, rel * std::abs(reference));
}

/// True if `value` is within tie tolerance of `best` (both may be +inf).
inline bool within_tie(double value, double best, double rel = kTieRelative) {
  if (std::isinf(best) || std::isinf(value)) return value == best;
  return std::abs(value - best) <= tie_tolerance(best, rel);
}

inline bool near_relative(double a, double b, double rel) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= std::max(kTieAbsolute, rel * std::max(std::abs(a), std::abs(b)));
}

}  // namespace resclust
