#pragma once

#include <cstdint>

namespace fundeg {

/// Small deterministic PRNG (splitmix64). Used by the randomized suites so
/// that a fixed seed reproduces byte-identical reports on any platform;
/// standard-library distributions are implementation-defined and would not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n); n >= 1.
  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  bool coin() { return next() & 1; }

 private:
  std::uint64_t state_;
};

}  // namespace fundeg
