#include "mdsfeat/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/parallel.hpp"

namespace mdsfeat {

DistanceMatrix geodesic_distance_matrix(const PointCloud& pc, std::size_t k_neighbors) {
  const std::size_t n = pc.size();
  if (n < 2) throw InvalidArgument("geodesic_distance_matrix: need at least two points");
  if (k_neighbors < 1) throw InvalidArgument("geodesic_distance_matrix: k must be at least 1");
  const std::size_t k = std::min(k_neighbors, n - 1);

  // adjacency: each point contributes edges to its k nearest neighbors
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  {
    std::vector<std::vector<std::pair<double, std::size_t>>> knn(n);
    parallel_for_chunks(n, [&](std::size_t begin, std::size_t end) {
      std::vector<std::pair<double, std::size_t>> dist(n - 1);
      for (std::size_t i = begin; i < end; ++i) {
        std::size_t w = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          dist[w++] = {euclidean(pc.points.row(i), pc.points.row(j)), j};
        }
        std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
        knn[i].assign(dist.begin(), dist.begin() + k);
      }
    });
    std::vector<std::vector<bool>> seen(n);
    for (auto& s : seen) s.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [w, j] : knn[i]) {
        if (!seen[i][j]) {
          adj[i].push_back({j, w});
          adj[j].push_back({i, w});
          seen[i][j] = seen[j][i] = true;
        }
      }
    }
  }

  // connectivity check, reporting the smallest component on failure
  {
    std::vector<int> comp(n, -1);
    int n_comp = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<std::size_t> stack = {s};
      comp[s] = n_comp;
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (const auto& [v, w] : adj[u]) {
          if (comp[v] < 0) {
            comp[v] = n_comp;
            stack.push_back(v);
          }
        }
      }
      ++n_comp;
    }
    if (n_comp > 1) {
      std::vector<std::size_t> counts(n_comp, 0);
      for (int c : comp) counts[c]++;
      const int smallest =
          static_cast<int>(std::min_element(counts.begin(), counts.end()) - counts.begin());
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i)
        if (comp[i] == smallest) members.push_back(i);
      std::ostringstream msg;
      msg << "geodesic_distance_matrix: graph has " << n_comp
          << " components; smallest has " << members.size() << " points {";
      for (std::size_t i = 0; i < members.size() && i < 8; ++i) {
        if (i) msg << ", ";
        msg << members[i];
      }
      if (members.size() > 8) msg << ", ...";
      msg << "}; increase k";
      throw ConnectivityError(msg.str(), std::move(members));
    }
  }

  Matrix d(n, n);
  parallel_for_chunks(n, [&](std::size_t begin, std::size_t end) {
    using Item = std::pair<double, std::size_t>;
    std::vector<double> dist(n);
    for (std::size_t s = begin; s < end; ++s) {
      std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
      dist[s] = 0.0;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      heap.push({0.0, s});
      while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (du > dist[u]) continue;
        for (const auto& [v, w] : adj[u]) {
          const double cand = du + w;
          if (cand < dist[v]) {
            dist[v] = cand;
            heap.push({cand, v});
          }
        }
      }
      for (std::size_t j = 0; j < n; ++j) d(s, j) = dist[j];
    }
  });

  // Dijkstra from each endpoint can differ in the last ulp; symmetrize
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = 0.5 * (d(i, j) + d(j, i));
  }
  return DistanceMatrix(std::move(d));
}

} // namespace mdsfeat
