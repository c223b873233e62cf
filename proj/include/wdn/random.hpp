#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace wdn {

/// Name recorded in snapshots and reports for the sampling procedure below.
inline constexpr std::string_view kSamplerName = "mt19937_64+fisher-yates(rejection-bounded)";

/**
 * Seeded sampler whose output is fully specified.
 *
 * std::mt19937_64 is pinned down by the standard, but the standard
 * distributions and std::shuffle are not, so bounded integers and the
 * shuffle are implemented here: bounded(n) draws 64-bit words and rejects
 * those at or above the largest multiple of n, then reduces modulo n.
 */
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t bounded(std::uint64_t n);

  /// Uniform random k-subset of {0, ..., n-1} in draw order: the first k
  /// positions of a Fisher–Yates shuffle that swaps position i with a
  /// uniform position in [i, n).
  std::vector<std::size_t> sample(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace wdn
