#pragma once

#include <cstdint>
#include <random>

namespace coeffbound {

// Deterministic uniform source. std::mt19937_64 has a fully specified output
// sequence, and the 53-bit conversion below is fixed arithmetic, so a given
// seed yields byte-identical doubles on every conforming platform.
// (std::uniform_real_distribution is implementation-defined and would not.)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Decorrelated seed for a numbered substream (splitmix64 finalizer), so
  // e.g. search start k and sample block k get independent engines.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed + (stream + 1) * 0x9e3779b97f4a7c15ull;
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace coeffbound
