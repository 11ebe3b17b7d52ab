#pragma once

#include "mdsfeat/matrix.hpp"

#include <span>
#include <vector>

namespace mdsfeat {

/// Linear projection onto the top covariance eigenvectors.
struct PcaModel {
  std::vector<double> mean; // length d
  Matrix components;        // m x d, rows orthonormal, descending eigenvalue
  std::vector<double> eigenvalues;

  std::size_t output_dim() const { return components.rows(); }
};

/// Fits on n x d data. Needs m <= min(n-1, d). When d exceeds n the
/// eigenproblem is solved on the n x n Gram matrix instead of the d x d
/// covariance (same components, snapshot method).
PcaModel pca_fit(const Matrix& data, std::size_t m);

std::vector<double> pca_project(const PcaModel& model, std::span<const double> x);

/// Projects every row of `data`.
Matrix pca_project_all(const PcaModel& model, const Matrix& data);

} // namespace mdsfeat
