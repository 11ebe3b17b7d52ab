#include "mdsfeat/kmeans.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/parallel.hpp"

namespace mdsfeat {

namespace {

// nearest centroid, ties to the lowest index
std::size_t nearest(const Matrix& centroids, std::span<const double> point, double* dist_sq) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    const double d = squared_euclidean(centroids.row(c), point);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (dist_sq) *dist_sq = best_d;
  return best;
}

} // namespace

KmeansResult kmeans(const Matrix& points, std::size_t k, Rng& rng, std::size_t max_iter) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  if (k < 1 || k > n) {
    throw InvalidArgument("kmeans: need 1 <= k <= n, got k=" + std::to_string(k) +
                          ", n=" + std::to_string(n));
  }

  // greedy farthest-point seeding
  Matrix centroids(k, d);
  std::vector<double> nearest_d(n, std::numeric_limits<double>::infinity());
  {
    const auto first = static_cast<std::size_t>(rng.below(n));
    for (std::size_t j = 0; j < d; ++j) centroids(0, j) = points(first, j);
    for (std::size_t c = 1; c <= k; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        const double di = squared_euclidean(points.row(i), centroids.row(c - 1));
        if (di < nearest_d[i]) nearest_d[i] = di;
      }
      if (c == k) break;
      std::size_t far = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (nearest_d[i] > nearest_d[far]) far = i;
      for (std::size_t j = 0; j < d; ++j) centroids(c, j) = points(far, j);
    }
  }

  KmeansResult result;
  result.assignments.assign(n, 0);
  std::vector<double> point_cost(n, 0.0);

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    std::atomic<bool> changed{false};
    parallel_for_chunks(n, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        double dsq = 0.0;
        const std::size_t a = nearest(centroids, points.row(i), &dsq);
        if (a != result.assignments[i]) {
          result.assignments[i] = a;
          changed.store(true, std::memory_order_relaxed);
        }
        point_cost[i] = dsq;
      }
    });

    double wcss = 0.0;
    for (double c : point_cost) wcss += c;
    result.wcss_history.push_back(wcss);
    result.iterations = iter + 1;
    if (!changed && iter > 0) break;

    // means, accumulated serially in index order for determinism
    Matrix sums(k, d);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = result.assignments[i];
      counts[a]++;
      for (std::size_t j = 0; j < d; ++j) sums(a, j) += points(i, j);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // reseed with the point farthest from its assigned centroid
        std::size_t far = 0;
        for (std::size_t i = 1; i < n; ++i)
          if (point_cost[i] > point_cost[far]) far = i;
        for (std::size_t j = 0; j < d; ++j) centroids(c, j) = points(far, j);
        point_cost[far] = 0.0;
        continue;
      }
      for (std::size_t j = 0; j < d; ++j) centroids(c, j) = sums(c, j) / static_cast<double>(counts[c]);
    }
  }

  // final assignment against the returned centroids
  parallel_for_chunks(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      result.assignments[i] = nearest(centroids, points.row(i), nullptr);
  });

  result.centroids = std::move(centroids);
  return result;
}

} // namespace mdsfeat
