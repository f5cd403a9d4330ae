#ifndef VMLAB_RNG_HPP
#define VMLAB_RNG_HPP

#include <cstdint>
#include <limits>

namespace vmlab {

/// Counter-based SplitMix64. Output i of a stream seeded with `seed` is
/// mix(seed + (i + 1) * kGamma), so any draw can be recomputed from
/// (seed, i) alone and results are identical on every platform.
///
/// This is the pinned generator for every sampled object in the library.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  constexpr explicit CounterRng(std::uint64_t seed = 0) noexcept : seed_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Stateless access to the i-th output.
  static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t i) noexcept {
    return mix(seed + (i + 1) * kGamma);
  }

  constexpr std::uint64_t operator()() noexcept { return at(seed_, counter_++); }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr std::uint64_t seed() const noexcept { return seed_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

  /// Uniform in [0, bound) by rejection; bound > 0.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = (*this)();
    while (x >= limit) x = (*this)();
    return x % bound;
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Seed of trial `trial` under master seed `master`: the trial-th counter output.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) noexcept {
  return CounterRng::at(master, trial);
}

/// Streams random bits one at a time from a CounterRng (64 per draw).
class BitStream {
 public:
  explicit BitStream(CounterRng& rng) : rng_(rng) {}

  bool next() {
    if (left_ == 0) {
      word_ = rng_();
      left_ = 64;
    }
    const bool b = word_ & 1U;
    word_ >>= 1;
    --left_;
    return b;
  }

 private:
  CounterRng& rng_;
  std::uint64_t word_ = 0;
  int left_ = 0;
};

}  // namespace vmlab

#endif  // VMLAB_RNG_HPP
