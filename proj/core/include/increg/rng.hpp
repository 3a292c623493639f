#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace increg {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 output mixing function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of an independent child stream. Replicate r of an experiment with
/// master seed S draws from Rng(derive_stream(S, r)); nested roles inside a
/// replicate (data generation, selection shuffles, ...) derive again from
/// that stream. The scheme makes every unit of work a pure function of
/// (seed, indices), independent of scheduling.
constexpr std::uint64_t derive_stream(std::uint64_t master,
                                      std::uint64_t id) noexcept {
  return mix64(master + kGoldenGamma * (id + 1));
}

/**
 * @brief Deterministic SplitMix64 generator with a fixed draw protocol.
 *
 * The protocol is part of the reproducibility contract:
 *   uniform():     one raw draw, high 53 bits mapped to (0, 1]
 *   normal():      exactly two uniforms (Box-Muller, cosine branch, no cache)
 *   exponential(): exactly one uniform
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Uniform on (0, 1]; never returns 0, so log(uniform()) is always finite.
  double uniform() noexcept {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal draw.
  double normal() noexcept {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Exponential draw with the given mean.
  double exponential(double mean) noexcept {
    return -mean * std::log(uniform());
  }

 private:
  std::uint64_t state_;
};

}  // namespace increg
