#include "mdsfeat/pca.hpp"

#include <cmath>
#include <string>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/sym_eigen.hpp"

namespace mdsfeat {

PcaModel pca_fit(const Matrix& data, std::size_t m) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (n < 2) throw InvalidArgument("pca_fit: need at least two samples");
  if (m < 1 || m > std::min(n - 1, d)) {
    throw InvalidArgument("pca_fit: m=" + std::to_string(m) + " outside [1, min(n-1, d)] = [1, " +
                          std::to_string(std::min(n - 1, d)) + "]");
  }

  PcaModel model;
  model.mean.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) model.mean[j] += data(i, j);
  for (auto& v : model.mean) v /= static_cast<double>(n);

  Matrix centered(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) centered(i, j) = data(i, j) - model.mean[j];

  model.components = Matrix(m, d);
  model.eigenvalues.assign(m, 0.0);

  if (d <= n) {
    // covariance route: S = X^T X / n
    Matrix cov(d, d);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a; b < d; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += centered(i, a) * centered(i, b);
        cov(a, b) = cov(b, a) = s / static_cast<double>(n);
      }
    }
    const SymEigen eig = sym_eigen(cov);
    for (std::size_t k = 0; k < m; ++k) {
      model.eigenvalues[k] = eig.eigenvalues[k];
      for (std::size_t j = 0; j < d; ++j) model.components(k, j) = eig.eigenvectors(j, k);
    }
  } else {
    // snapshot route: eigenvectors of X X^T / n map to X^T u / ||X^T u||
    Matrix gram(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += centered(a, j) * centered(b, j);
        gram(a, b) = gram(b, a) = s / static_cast<double>(n);
      }
    }
    const SymEigen eig = sym_eigen(gram);
    for (std::size_t k = 0; k < m; ++k) {
      model.eigenvalues[k] = eig.eigenvalues[k];
      double norm = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += centered(i, j) * eig.eigenvectors(i, k);
        model.components(k, j) = s;
        norm += s * s;
      }
      norm = std::sqrt(norm);
      if (norm > 1e-14)
        for (std::size_t j = 0; j < d; ++j) model.components(k, j) /= norm;
    }
  }
  return model;
}

std::vector<double> pca_project(const PcaModel& model, std::span<const double> x) {
  const std::size_t d = model.mean.size();
  if (x.size() != d) throw DimensionError("pca_project: input length mismatch");
  std::vector<double> y(model.components.rows(), 0.0);
  for (std::size_t k = 0; k < model.components.rows(); ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += model.components(k, j) * (x[j] - model.mean[j]);
    y[k] = s;
  }
  return y;
}

Matrix pca_project_all(const PcaModel& model, const Matrix& data) {
  Matrix out(data.rows(), model.components.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto y = pca_project(model, data.row(i));
    for (std::size_t k = 0; k < y.size(); ++k) out(i, k) = y[k];
  }
  return out;
}

} // namespace mdsfeat
