#pragma once

#include <cstdint>
#include <random>

namespace dilcp {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stateless hash of (seed, index) to 64 bits.
constexpr std::uint64_t keyed_hash(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL));
}

/// Uniform draw in [0, 1) addressed by (seed, index). Dilution masks use one
/// draw per entity so that thresholding at p and p' < p gives nested masks.
constexpr double keyed_uniform(std::uint64_t seed, std::uint64_t index) noexcept {
  return static_cast<double>(keyed_hash(seed, index) >> 11) * 0x1.0p-53;
}

/// Sequential generator for dynamics and graph sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform in [0, 1).
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Exponential variate with the given rate (> 0).
  double exponential(double rate) noexcept;

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept;

  bool bernoulli(double p) noexcept { return uniform() < p; }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dilcp
