#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace volfit::rng {

// Deterministic random stream with every mapping pinned down, so a seed
// reproduces the same cohort and the same fold assignment everywhere:
//   engine        std::mt19937_64(seed) -- the generator sequence is fixed
//                 by the C++ standard, identical on every platform
//   uniform01     (next() >> 11) * 2^-53, in [0, 1)
//   open01        ((next() >> 11) + 1) * 2^-53, in (0, 1]
//   below(k)      next() % k (modulo; bias is irrelevant here, determinism is)
//   normal        Box-Muller cosine branch: sqrt(-2 ln u1) * cos(2 pi u2)
//                 with u1 = open01(), u2 = uniform01(), one draw per call
// The only platform dependence left is the libm rounding of log/cos inside
// normal(), which is at worst a few ulp.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double open01() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal();

  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::mt19937_64 engine_;
};

// Fisher-Yates: for i = n-1 down to 1, swap(idx[i], idx[stream.below(i+1)]).
void shuffle(std::vector<std::size_t>& indices, Stream& stream);

}  // namespace volfit::rng
