#pragma once

#include <cstdint>

namespace uwmvs {

// Stateless counter-based generator. Draw (stream, counter) under a seed is a
// pure function, so independent consumers can interleave or run in parallel
// without perturbing each other's sequences.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  uint64_t bits(uint64_t stream, uint64_t counter) const {
    uint64_t h = mix(seed_ + 0x9E3779B97F4A7C15ull * (stream + 1));
    return mix(h ^ (0xD1B54A32D192ED03ull * (counter + 1)));
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform(uint64_t stream, uint64_t counter) const {
    return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
  }

  double uniform(uint64_t stream, uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform(stream, counter);
  }

  // Uniform integer in [0, n).
  uint32_t below(uint64_t stream, uint64_t counter, uint32_t n) const {
    return static_cast<uint32_t>(bits(stream, counter) % n);
  }

  uint64_t seed() const { return seed_; }

 private:
  static uint64_t mix(uint64_t x) {  // splitmix64 finalizer
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
  }

  uint64_t seed_;
};

// Stream ids used across the pipeline. Each module draws from its own stream.
namespace rng_stream {
inline constexpr uint64_t kWeightInit = 1;
inline constexpr uint64_t kViewCount = 2;
inline constexpr uint64_t kTargetPick = 3;
inline constexpr uint64_t kSourcePick = 4;
inline constexpr uint64_t kPatchPos = 5;
inline constexpr uint64_t kTexture = 6;
}  // namespace rng_stream

}  // namespace uwmvs
