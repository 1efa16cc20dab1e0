#pragma once

// Deterministic RNG used by the self-test suites and samplers.  A hand-rolled
// splitmix64 keeps the byte stream identical across platforms and standard
// library versions, which the reproducibility contract of the selftest
// command depends on; std::mt19937 would pin the engine but not the
// distributions.

#include <cstdint>
#include <string>

namespace padop {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-ish draw in [0, n); the modulo bias is irrelevant for test-case
  // generation and keeps the stream trivially portable.
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return next() & 1; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Independent per-suite stream: mixing the suite label into the seed keeps
// suites order-independent and individually reproducible.
inline Rng suite_rng(std::uint64_t seed, const std::string& suite) {
  return Rng(seed ^ fnv1a64(suite));
}

}  // namespace padop
