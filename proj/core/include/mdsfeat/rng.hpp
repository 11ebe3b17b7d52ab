#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace mdsfeat {

/// xoshiro256** generator (Blackman & Vigna), seeded through splitmix64.
///
/// The generator is fixed by name so that a seed produces the same stream
/// on every platform; std::mt19937 would do too, but distributions in
/// <random> are not portable across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  /// Unbiased uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t seed_;
  std::uint64_t state_[4];
};

/// Fisher-Yates permutation of 0..n-1; throws InvalidArgument for n = 0.
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

} // namespace mdsfeat
