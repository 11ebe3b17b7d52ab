#include "mdsfeat/distance_matrix.hpp"

#include <cmath>

#include "mdsfeat/csv.hpp"
#include "mdsfeat/errors.hpp"

namespace mdsfeat {

DistanceMatrix::DistanceMatrix(Matrix values, double symmetry_tolerance) {
  const std::size_t n = values.rows();
  if (values.cols() != n) throw DimensionError("DistanceMatrix: matrix must be square");
  if (!values.all_finite()) throw DataError("DistanceMatrix: non-finite entries");
  for (std::size_t i = 0; i < n; ++i) {
    if (values(i, i) != 0.0)
      throw DataError("DistanceMatrix: nonzero diagonal at index " + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(values(i, j) - values(j, i)) > symmetry_tolerance)
        throw DataError("DistanceMatrix: asymmetric at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
      if (values(i, j) < 0.0 || values(j, i) < 0.0)
        throw DataError("DistanceMatrix: negative value at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
      values(j, i) = values(i, j) = 0.5 * (values(i, j) + values(j, i));
    }
  }
  values_ = std::move(values);
}

DistanceMatrix DistanceMatrix::from_points(const Matrix& points) {
  const std::size_t n = points.rows();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d(i, j) = d(j, i) = euclidean(points.row(i), points.row(j));
  return DistanceMatrix(std::move(d));
}

DistanceMatrix DistanceMatrix::load_csv(const std::filesystem::path& path) {
  CsvTable table = read_csv(path, /*expect_header=*/false);
  return DistanceMatrix(std::move(table.values));
}

void DistanceMatrix::save_csv(const std::filesystem::path& path) const {
  write_csv(path, values_);
}

} // namespace mdsfeat
