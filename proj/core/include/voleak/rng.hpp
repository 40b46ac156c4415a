#pragma once

#include <cstdint>
#include <random>

namespace voleak {

// Deterministic RNG used everywhere in the simulator. All draws go through
// the helpers below instead of <random> distributions, so that a (seed,
// stream) pair produces the same sequence on every platform and standard
// library.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : eng_(seed) {}

  // Scalar seed for the (seed, stream) substream, for handing to components
  // that take a plain seed.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    return mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL));
  }

  // Independent substream for (seed, stream), e.g. one per trial.
  static SplitRng substream(std::uint64_t seed, std::uint64_t stream) {
    return SplitRng(derive(seed, stream));
  }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform integer in [lo, hi], inclusive. Rejection sampling, no modulo bias.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi) return lo;
    const std::uint64_t range = hi - lo + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return lo + x % range;
  }

  // Uniform double in [0, 1).
  double uniform_real() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform_real();
  }

  bool bernoulli(double p) { return uniform_real() < p; }

 private:
  static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 eng_;
};

// FNV-1a, used for config and record hashing.
inline std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

}  // namespace voleak
