#pragma once

#include "mdsfeat/distance_matrix.hpp"
#include "mdsfeat/embedding.hpp"
#include "mdsfeat/least_squares.hpp"
#include "mdsfeat/rng.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace mdsfeat {

/// Order in which points enter the constraining set during initialization.
enum class InitStrategy { random, largest_first, smallest_first };

struct IlmaOptions {
  std::size_t max_adjustment_iterations = 50; // adjustment sweeps (M)
  double relative_stress_tolerance = 1e-4;    // early-stop threshold (epsilon)
  InitStrategy init_strategy = InitStrategy::random;
  std::uint64_t seed = 0;
  LmOptions lm; // per-subproblem solver budget
};

struct IlmaInit {
  Matrix codes;                             // N x m, every point placed
  std::vector<std::size_t> insertion_order; // starts with the seed pair
};

/// Greedy initialization stage: seeds two points from a chosen entry of the
/// distance matrix, then places each remaining point by a small
/// Levenberg-Marquardt solve against the already-placed set.
///
/// random: seed entry and insertion order drawn uniformly from `rng`.
/// largest_first / smallest_first: seed entry is the extreme off-diagonal
/// value; each next point maximizes/minimizes the distance to the placed
/// set, ties to the lexicographically smallest (anchor, point) pair.
IlmaInit ilma_init(const DistanceMatrix& d, std::size_t m, InitStrategy strategy, Rng& rng,
                   const LmOptions& lm = {});

/// Two-stage iterated Levenberg-Marquardt MDS: initialization followed by up
/// to M adjustment sweeps. Each sweep re-solves every point in a fresh random
/// permutation against all others, warm-started at its current position, so
/// the raw stress never increases. Stops early when the relative stress
/// decrease between sweeps falls below the tolerance. The trace holds one
/// sample after initialization and one per sweep.
std::pair<Embedding, RunTrace> ilma_fit(const DistanceMatrix& d, std::size_t m,
                                        const IlmaOptions& opts);

} // namespace mdsfeat
