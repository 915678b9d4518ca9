#pragma once

#include <cstdint>

namespace permlab {

// Splitmix-style 64-bit generator: one word of state, one mix per draw.
// Substreams are derived from the construction seed (not the advanced state),
// so a trial's draws do not depend on scheduling order or worker count.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : seed_(seed), state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Unbiased integer in [0, bound); bound >= 1.
  uint64_t below(uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<uint64_t>(m);
    if (lo < bound) {
      const uint64_t cutoff = (0 - bound) % bound;
      while (lo < cutoff) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // [0, 1) from the top 53 bits.
  double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return real01() < p; }

  // Deterministic child stream; distinct keys on the same parent never share
  // a state (key -> state is injective for fixed seed).
  RandomSource stream(uint64_t key) const {
    return RandomSource(mix(mix(seed_ ^ 0x8bb84b93962eacc9ull) + key));
  }

  RandomSource stream(uint64_t a, uint64_t b) const { return stream(a).stream(b); }

  uint64_t seed() const { return seed_; }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t seed_;
  uint64_t state_;
};

}  // namespace permlab
