#pragma once

#include <cstdint>
#include <random>

namespace wordlab {

// Seed derivation via splitmix64. Each (master seed, stream index) pair
// yields an independent deterministic generator; identical (seed, worker
// layout) reproduces every sample stream exactly.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  static Rng derive(std::uint64_t master, std::uint64_t job, std::uint64_t stream) {
    return Rng(splitmix64(splitmix64(master) ^ splitmix64(job * 0x9e3779b97f4a7c15ULL + 1)) ^
               splitmix64(stream + 0x2545f4914f6cdd1dULL));
  }

  std::uint64_t next() { return eng_(); }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (-bound) % bound;
    for (;;) {
      std::uint64_t r = eng_();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1).
  double unit() { return (eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace wordlab
