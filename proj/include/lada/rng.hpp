#pragma once

#include <cstdint>

namespace lada {

// xoshiro256++ with splitmix64 seeding.
//
// Byte-level seeding contract: the four 64-bit words of state are the first
// four outputs of splitmix64 initialized with the user seed. Streams derived
// from the same seed are therefore identical on every platform, which is what
// makes sampled networks replayable.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t nextU64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 significant bits.
  double nextDouble() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) without modulo bias.
  std::uint64_t nextBounded(std::uint64_t bound) {
    const std::uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
      std::uint64_t v = nextU64();
      if (v >= threshold) return v % bound;
    }
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4];
};

} // namespace lada
