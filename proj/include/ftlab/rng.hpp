#pragma once

#include <cstdint>

namespace ftlab {

// splitmix64 finalizer. Full 64-bit avalanche, used both as a PRNG step and
// as the mixing core for derived identifiers.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic stream of 64-bit values from a seed.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Unbiased value in [0, bound).
  uint64_t next_below(uint64_t bound) {
    uint64_t threshold = -bound % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

// Stable derivation of sub-seeds: children of one seed never collide with
// children of a different tag, so every component can carve out its own
// deterministic randomness from a single run seed.
inline uint64_t derive_seed(uint64_t seed, uint64_t tag) { return mix64(seed ^ mix64(tag)); }

inline uint64_t derive_seed(uint64_t seed, uint64_t tag_a, uint64_t tag_b) {
  return derive_seed(derive_seed(seed, tag_a), tag_b);
}

}  // namespace ftlab
