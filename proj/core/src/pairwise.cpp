#include "mdsfeat/pairwise.hpp"

#include <cmath>
#include <string>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/parallel.hpp"

namespace mdsfeat {

DistanceMatrix build_distance_matrix_indexed(
    std::size_t n, const std::function<double(std::size_t, std::size_t)>& measure) {
  Matrix d(n, n);
  const std::size_t pairs = n * (n - 1) / 2;

  // flat pair index -> (i, j), i < j
  auto unrank = [n](std::size_t p) {
    std::size_t i = 0, remaining = p;
    while (remaining >= n - 1 - i) {
      remaining -= n - 1 - i;
      ++i;
    }
    return std::pair<std::size_t, std::size_t>{i, i + 1 + remaining};
  };

  parallel_for_chunks(pairs, [&](std::size_t begin, std::size_t end) {
    auto [i, j] = unrank(begin);
    for (std::size_t p = begin; p < end; ++p) {
      const double v = measure(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw DataError("build_distance_matrix: measure returned " + std::to_string(v) +
                        " for pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      d(i, j) = d(j, i) = v;
      if (++j == n) {
        ++i;
        j = i + 1;
      }
    }
  });
  return DistanceMatrix(std::move(d));
}

} // namespace mdsfeat
