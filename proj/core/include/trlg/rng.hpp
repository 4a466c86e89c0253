#pragma once

#include <cstdint>

namespace trlg {

// splitmix64. Used everywhere randomness must reproduce bit-for-bit across
// standard libraries (std distributions make no such promise).
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace trlg
