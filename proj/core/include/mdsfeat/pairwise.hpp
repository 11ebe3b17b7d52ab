#pragma once

#include "mdsfeat/distance_matrix.hpp"

#include <functional>

namespace mdsfeat {

/// Evaluates `measure(i, j)` once per unordered pair (in parallel, each pair
/// into its fixed slot), mirrors the result and zeroes the diagonal. Throws
/// DataError naming the pair when a measure returns a negative or non-finite
/// value.
DistanceMatrix build_distance_matrix_indexed(
    std::size_t n, const std::function<double(std::size_t, std::size_t)>& measure);

/// Same over a container of items with a symmetric binary measure.
template <typename Items, typename Measure>
DistanceMatrix build_distance_matrix(const Items& items, Measure&& measure) {
  return build_distance_matrix_indexed(items.size(), [&](std::size_t i, std::size_t j) {
    return measure(items[i], items[j]);
  });
}

} // namespace mdsfeat
