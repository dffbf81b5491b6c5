#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace resparse {

namespace rng_detail {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace rng_detail

// Counter-based generator (splitmix64 core). One global seed expands into
// named substreams, and substreams split into indexed children, so every
// pipeline stage draws from its own stream regardless of evaluation order.
// All outputs are platform-independent for a given seed.
//
// child() derives from the stream identity at construction time; derive
// children before drawing from the parent.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed)
      : state_(rng_detail::mix64(seed + rng_detail::kGamma)) {}

  RngStream(std::uint64_t seed, std::string_view name)
      : RngStream(rng_detail::mix64(seed) ^ rng_detail::fnv1a(name)) {}

  RngStream child(std::uint64_t index) const {
    return RngStream(rng_detail::mix64(state_ ^ rng_detail::mix64(index + 0x5851F42D4C957F2DULL)));
  }

  // Named substream rooted at this stream's current identity.
  RngStream substream(std::string_view name) const {
    return RngStream(rng_detail::mix64(state_) ^ rng_detail::fnv1a(name));
  }

  std::uint64_t next_u64() {
    state_ += rng_detail::kGamma;
    return rng_detail::mix64(state_);
  }

  // Uniform in [0, 1), 53-bit mantissa.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe as a log() argument.
  double next_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  double next_gaussian() {
    double u = next_open();
    double v = next_double();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.28318530717958647692 * v);
  }

  // Uniform in [0, n). Fixed-point multiply; bias is O(n/2^64).
  int next_index(int n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * static_cast<std::uint64_t>(n);
    return static_cast<int>(m >> 64);
  }

  bool next_bernoulli(double p) { return next_double() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace resparse
