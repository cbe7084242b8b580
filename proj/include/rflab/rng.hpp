#pragma once

#include <cstdint>

namespace rflab {

// Counter-based splittable random generator.
//
// Every logical stream (one per Monte-Carlo sample, one per sweep cell, one
// per training restart, ...) is keyed by (seed, stream) and is statistically
// independent of every other stream.  Because a stream's output depends only
// on its key and its own draw counter, results are reproducible bit-for-bit
// no matter how samples are partitioned across worker threads.
//
// The core is the splitmix64 output permutation, which is invertible and
// passes BigCrush when driven by a Weyl sequence.
class SplitRng {
 public:
  SplitRng(uint64_t seed, uint64_t stream) {
    // Derive a per-stream state and increment from the key.  The increment is
    // forced odd so the underlying Weyl sequence has full period.
    state_ = mix(seed ^ 0x9e3779b97f4a7c15ULL) ^ mix(stream);
    inc_ = (mix(stream ^ 0xda942042e4dd58b5ULL) << 1) | 1ULL;
  }

  uint64_t next_u64() {
    state_ += inc_;
    return mix(state_);
  }

  // Unbiased sample from {0, 1, ..., bound-1} (Lemire's method with rejection).
  uint64_t next_below(uint64_t bound) {
    __uint128_t m = static_cast<__uint128_t>(next_u64()) * bound;
    auto lo = static_cast<uint64_t>(m);
    if (lo < bound) {
      uint64_t threshold = (0ULL - bound) % bound;
      while (lo < threshold) {
        m = static_cast<__uint128_t>(next_u64()) * bound;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform angle in [0, 2*pi).
  double next_angle();

  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
  uint64_t inc_;
};

inline double SplitRng::next_angle() {
  constexpr double two_pi = 6.283185307179586476925286766559;
  return next_double() * two_pi;
}

// Stable 64-bit content hash (FNV-1a) used for sweep resume keys.
inline uint64_t fnv1a(const void* data, uint64_t len, uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (uint64_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace rflab
