#pragma once

#include <cstdint>
#include <random>

namespace resclust {

// Portable seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard. The standard distributions are not
// portable, so conversions are done here:
//   uniform01(): top 53 bits of one draw scaled by 2^-53, in [0, 1).
//   below(n):    rejection sampling on the raw 64-bit draw, unbiased in [0, n).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace resclust
