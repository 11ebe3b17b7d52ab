#pragma once

#include "mdsfeat/matrix.hpp"

#include <filesystem>

namespace mdsfeat {

/// Symmetric nonnegative dissimilarities with zero diagonal. Values are not
/// required to satisfy the triangle inequality.
class DistanceMatrix {
public:
  DistanceMatrix() = default;

  /// Validates symmetry (within `symmetry_tolerance`), zero diagonal,
  /// nonnegativity and finiteness, then stores the symmetrized values.
  explicit DistanceMatrix(Matrix values, double symmetry_tolerance = 1e-9);

  /// Pairwise Euclidean distances of the rows of `points`.
  static DistanceMatrix from_points(const Matrix& points);

  static DistanceMatrix load_csv(const std::filesystem::path& path);
  void save_csv(const std::filesystem::path& path) const;

  std::size_t size() const { return values_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
  const Matrix& values() const { return values_; }

  double max_value() const { return values_.max_abs(); }

private:
  Matrix values_;
};

} // namespace mdsfeat
