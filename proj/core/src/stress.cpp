#include "mdsfeat/stress.hpp"

#include <cmath>

#include "mdsfeat/errors.hpp"

namespace mdsfeat {

double raw_stress(const DistanceMatrix& d, const Matrix& codes) {
  const std::size_t n = d.size();
  if (codes.rows() != n)
    throw DimensionError("raw_stress: codes have " + std::to_string(codes.rows()) +
                         " rows for a " + std::to_string(n) + "-item distance matrix");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double e = d(i, j) - euclidean(codes.row(i), codes.row(j));
      s += e * e;
    }
  }
  return s;
}

double stress1(const DistanceMatrix& d, const Matrix& codes) {
  const std::size_t n = d.size();
  if (codes.rows() != n) throw DimensionError("stress1: row count mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = euclidean(codes.row(i), codes.row(j));
      const double e = d(i, j) - dist;
      num += e * e;
      den += dist * dist;
    }
  }
  if (den <= 0.0)
    throw DegenerateConfiguration("stress1: all embedded points coincide");
  return std::sqrt(num / den);
}

} // namespace mdsfeat
