#pragma once

#include <cstdint>

namespace qcp {

// SplitMix64: tiny, portable, and splittable. Monte Carlo trials each get an
// independent stream derived from (seed, trial index), so results do not
// depend on evaluation order and are bit-identical across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
    (void)g.next_u64();
    return g.next_u64();
  }

  static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t stream) { return SplitMix64(mix(seed, stream)); }

 private:
  std::uint64_t state_;
};

}  // namespace qcp
