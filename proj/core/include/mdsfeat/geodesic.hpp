#pragma once

#include "mdsfeat/distance_matrix.hpp"
#include "mdsfeat/matrix.hpp"

namespace mdsfeat {

/// n points in R^d, one per row.
struct PointCloud {
  Matrix points;

  std::size_t size() const { return points.rows(); }
};

/// Shortest-path distances through a symmetric k-nearest-neighbor graph with
/// Euclidean edge weights (an edge survives if either endpoint selects the
/// other). All-pairs shortest paths by repeated Dijkstra.
///
/// Throws ConnectivityError naming the smallest disconnected component when
/// the graph does not come out connected.
DistanceMatrix geodesic_distance_matrix(const PointCloud& pc, std::size_t k_neighbors);

} // namespace mdsfeat
