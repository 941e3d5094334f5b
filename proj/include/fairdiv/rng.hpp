#pragma once

#include <cmath>
#include <cstdint>

namespace fairdiv {

/// Counter-based 64-bit generator: the k-th output of stream (seed, stream) is
/// the SplitMix64 finalizer applied to key + k * golden-gamma. Streams derived
/// from distinct (seed, stream) pairs are independent for Monte Carlo purposes,
/// which makes chunked sampling reproducible no matter how many workers run.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(finalize(seed + 0x9E3779B97F4A7C15ULL) ^ finalize(stream * 0xBF58476D1CE4E5B9ULL + 0x94D049BB133111EBULL)) {}

  std::uint64_t next_u64() {
    const std::uint64_t z = key_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    return finalize(z);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * next_double(); }

  /// Exponential with rate 1.
  double exponential() { return -std::log1p(-next_double()); }

 private:
  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace fairdiv
