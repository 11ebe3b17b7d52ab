#pragma once

#include "mdsfeat/distance_matrix.hpp"
#include "mdsfeat/embedding.hpp"
#include "mdsfeat/rng.hpp"

#include <cstdint>
#include <limits>
#include <utility>

namespace mdsfeat {

struct SmacofOptions {
  std::size_t max_iterations = 1000;
  double relative_stress_tolerance = 1e-4;
  std::uint64_t seed = 0;
  /// Stop after this much wall time; used for equal-time comparisons.
  double time_budget_seconds = std::numeric_limits<double>::infinity();
};

/// Plain SMACOF baseline: majorization via the Guttman transform from a
/// seeded random start (uniform in [0, max(D)]^m). Raw stress is
/// non-increasing; coincident points contribute zero to the transform.
std::pair<Embedding, RunTrace> smacof_fit(const DistanceMatrix& d, std::size_t m,
                                          const SmacofOptions& opts);

} // namespace mdsfeat
