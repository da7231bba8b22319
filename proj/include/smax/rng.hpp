#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>

namespace smax {

// xoshiro256++ seeded through splitmix64. Self-contained so that streams are
// identical across platforms and standard library versions; std::* distributions
// are implementation-defined and would break report reproducibility.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  /// Derives an independent child stream from (seed, path...). Used to give
  /// every (assignment ordinal, trial ordinal) its own stream so that serial
  /// and parallel runs agree.
  static Rng child(uint64_t seed, std::initializer_list<uint64_t> path) {
    uint64_t acc = seed;
    for (uint64_t p : path) {
      acc = splitmix64(acc);
      acc ^= 0x9e3779b97f4a7c15ull + p + (acc << 6) + (acc >> 2);
    }
    return Rng(acc);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform integer in [0, bound), unbiased via rejection. bound >= 1.
  uint64_t below(uint64_t bound) {
    if (bound == 0) throw std::logic_error("Rng::below(0)");
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  static uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  uint64_t s_[4];
};

}  // namespace smax
