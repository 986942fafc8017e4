#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace xroads {

/// xoshiro256** generator seeded through SplitMix64.
///
/// Satisfies UniformRandomBitGenerator. Independent substreams are obtained
/// with derive(seed, index, tag): the state is a hash of the triple, so the
/// stream for a given Monte Carlo realization does not depend on how the
/// realizations are distributed over worker threads.
class SeededStream {
 public:
  using result_type = std::uint64_t;

  explicit SeededStream(std::uint64_t seed);

  static SeededStream derive(std::uint64_t seed, std::uint64_t index, std::uint64_t tag = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Exponential variate with the given mean.
  double exponential(double mean);
  /// Standard normal variate (Marsaglia polar method, no cached second value).
  double normal();

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// SplitMix64 finalizer; exposed for hashing seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace xroads
