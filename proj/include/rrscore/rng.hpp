#pragma once

#include <cstdint>

namespace rrscore {

// SplitMix64. Counter-based: the whole stream is a pure function of the
// 64-bit key, which makes per-trial streams reproducible regardless of
// scheduling. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t key) : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~static_cast<result_type>(0); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Derives a stream key from (seed, a, b); used as (master seed, n, trial).
inline std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(seed);
  std::uint64_t k = g();
  k ^= a + 0x9e3779b97f4a7c15ULL + (k << 6) + (k >> 2);
  SplitMix64 h(k);
  k = h();
  k ^= b + 0x9e3779b97f4a7c15ULL + (k << 6) + (k >> 2);
  SplitMix64 f(k);
  return f();
}

}  // namespace rrscore
