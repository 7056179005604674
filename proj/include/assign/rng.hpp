#pragma once

#include <cstddef>
#include <cstdint>

#include "assign/distribution.hpp"

namespace assign {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// Seed of Monte Carlo trial t: mix64(seed ^ mix64(t + golden)).
/// Depends only on (seed, t), never on scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
  return mix64(seed ^ mix64(trial + kGolden));
}

/// Counter-based stream: the c-th draw is mix64(key + c * golden), so any
/// position can be reproduced from (key, c) alone.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t next() noexcept { return mix64(key_ + (++counter_) * kGolden); }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), n >= 1; rejection keeps it exact.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = -n % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next();
      const unsigned __int128 product = static_cast<unsigned __int128>(r) * n;
      if (static_cast<std::uint64_t>(product) >= limit) {
        return static_cast<std::uint64_t>(product >> 64);
      }
    }
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// 0-based support index drawn by inversion of the cumulative array.
std::size_t sample_index(const DiscreteDistribution& dist, CounterRng& rng) noexcept;

}  // namespace assign
