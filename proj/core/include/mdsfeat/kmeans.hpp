#pragma once

#include "mdsfeat/matrix.hpp"
#include "mdsfeat/rng.hpp"

#include <cstddef>
#include <vector>

namespace mdsfeat {

struct KmeansResult {
  Matrix centroids;                   // k x d
  std::vector<std::size_t> assignments; // nearest centroid per point
  std::vector<double> wcss_history;   // within-cluster sum of squares per iteration
  std::size_t iterations = 0;
};

/// Lloyd iterations with greedy farthest-point seeding: the first centroid is
/// drawn from `rng`, every later one is the point farthest from its nearest
/// chosen centroid (ties to the lowest index). Empty clusters are reseeded
/// with the globally worst-assigned point, which keeps the objective
/// non-increasing. Assignment distances may be computed on several threads;
/// the result does not depend on the thread count.
KmeansResult kmeans(const Matrix& points, std::size_t k, Rng& rng, std::size_t max_iter = 100);

} // namespace mdsfeat
