#pragma once

// Portable random streams.
//
// Generator: xoshiro256** (Blackman & Vigna), state filled from SplitMix64.
// Substreams: stream_seed(seed, {a, b, ...}) folds each path element into the
// seed with the SplitMix64 finalizer:
//
//   h = seed
//   for k in path:  h = mix64(h ^ mix64(k + 0x9E3779B97F4A7C15))
//
// The circuit generator uses path {cycle, qubit}; trajectories use
// {trajectory, purpose}; block samplers use {block}. Every draw below is
// defined with integer arithmetic only, so sequences are identical on every
// platform and in any language that reproduces these few lines.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace rcs {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

constexpr std::uint64_t stream_seed(
    std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = seed;
  for (std::uint64_t k : path) h = mix64(h ^ mix64(k + 0x9E3779B97F4A7C15ULL));
  return h;
}

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept { return next(); }

  constexpr std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection;
  /// bound must be nonzero.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform n-bit integer, 1 <= bits <= 64.
  constexpr std::uint64_t bits(int n) noexcept { return next() >> (64 - n); }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
};

inline Xoshiro256 make_stream(std::uint64_t seed,
                              std::initializer_list<std::uint64_t> path) {
  return Xoshiro256(stream_seed(seed, path));
}

}  // namespace rcs
