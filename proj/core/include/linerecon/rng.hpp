#pragma once

#include <cstdint>
#include <string_view>

#include "linerecon/coordinate.hpp"

namespace linerecon {

// All randomness in the library flows through SplitMix64 (Steele, Lea &
// Flood). One master seed plus a (purpose tag, index) pair names a stream,
// so every experiment replays bit-for-bit on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  // Uniform big integer in [0, bound] by masked rejection on the top word.
  Coordinate below_inclusive(const Coordinate& bound);

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stream seed for (master, tag, index). Documented in the README so results
// can be reproduced outside this codebase.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index) {
  const std::uint64_t a = mix64(master ^ fnv1a64(tag));
  return mix64(a ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

inline SplitMix64 derive_stream(std::uint64_t master, std::string_view tag,
                                std::uint64_t index = 0) {
  return SplitMix64(derive_seed(master, tag, index));
}

inline Coordinate SplitMix64::below_inclusive(const Coordinate& bound) {
  if (bound <= 0) return Coordinate(0);
  const unsigned bits = static_cast<unsigned>(msb(bound)) + 1;
  const unsigned words = (bits + 63) / 64;
  const unsigned top_bits = bits - 64 * (words - 1);
  const std::uint64_t top_mask =
      top_bits >= 64 ? ~0ULL : ((std::uint64_t{1} << top_bits) - 1);
  for (;;) {
    Coordinate r = 0;
    for (unsigned w = 0; w < words; ++w) {
      std::uint64_t word = next();
      if (w + 1 == words) word &= top_mask;
      r |= Coordinate(word) << (64 * w);
    }
    if (r <= bound) return r;
  }
}

}  // namespace linerecon
