#include "mdsfeat/kpca.hpp"

#include <cmath>
#include <string>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/rng.hpp"
#include "mdsfeat/sym_eigen.hpp"

namespace mdsfeat {

double kernel_eval(const KernelParams& k, std::span<const double> x, std::span<const double> y) {
  switch (k.kind) {
    case KernelKind::gaussian:
      return std::exp(-squared_euclidean(x, y) / (2.0 * k.sigma * k.sigma));
    case KernelKind::polynomial3: {
      double dot = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
      const double b = dot + 1.0;
      return b * b * b;
    }
    case KernelKind::linear: {
      double dot = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
      return dot;
    }
  }
  throw InvalidArgument("kernel_eval: unknown kernel");
}

Matrix center_gram(const Matrix& k) {
  const std::size_t n = k.rows();
  if (k.cols() != n) throw DimensionError("center_gram: matrix must be square");
  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row_mean[i] += k(i, j);
    row_mean[i] /= static_cast<double>(n);
    grand += row_mean[i];
  }
  grand /= static_cast<double>(n);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = k(i, j) - row_mean[i] - row_mean[j] + grand;
  return out;
}

KpcaModel kpca_fit(const Matrix& data, const KernelParams& kernel, std::size_t m) {
  const std::size_t n = data.rows();
  if (n < 2) throw InvalidArgument("kpca_fit: need at least two samples");
  if (m < 1 || m > n - 1)
    throw InvalidArgument("kpca_fit: m must lie in [1, n-1], got " + std::to_string(m));
  if (kernel.kind == KernelKind::gaussian && !(kernel.sigma > 0.0))
    throw InvalidArgument("kpca_fit: gaussian sigma must be positive");

  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      k(i, j) = k(j, i) = kernel_eval(kernel, data.row(i), data.row(j));

  KpcaModel model;
  model.kernel = kernel;
  model.training_points = data;
  model.requested_dim = m;
  model.row_means.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) model.row_means[i] += k(i, j);
    model.row_means[i] /= static_cast<double>(n);
    model.grand_mean += model.row_means[i];
  }
  model.grand_mean /= static_cast<double>(n);

  const Matrix centered = center_gram(k);
  const SymEigen eig = sym_eigen(centered);

  // keep strictly positive eigenvalues of K~ (the problem K~ a = lambda n a
  // has eigenvalue lambda n); scale a_l so the feature-space eigenvector has
  // unit norm: a_l = v_l / sqrt(eigval)
  const double lmax = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
  const double floor = std::max(1e-12, 1e-12 * lmax);
  std::size_t usable = 0;
  while (usable < m && usable < n && eig.eigenvalues[usable] > floor) ++usable;
  model.reduced_rank = usable < m;

  model.alphas = Matrix(n, usable);
  for (std::size_t c = 0; c < usable; ++c) {
    const double scale = 1.0 / std::sqrt(eig.eigenvalues[c]);
    for (std::size_t i = 0; i < n; ++i) model.alphas(i, c) = eig.eigenvectors(i, c) * scale;
  }
  return model;
}

std::vector<double> kpca_project(const KpcaModel& model, std::span<const double> x) {
  const std::size_t n = model.training_points.rows();
  if (x.size() != model.training_points.cols())
    throw DimensionError("kpca_project: input length mismatch");

  std::vector<double> kx(n);
  double kx_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    kx[i] = kernel_eval(model.kernel, x, model.training_points.row(i));
    kx_mean += kx[i];
  }
  kx_mean /= static_cast<double>(n);

  // centered row: k~(x, x_i) = k(x, x_i) - rowmean_i - mean_j k(x, x_j) + grand
  std::vector<double> y(model.alphas.cols(), 0.0);
  for (std::size_t c = 0; c < model.alphas.cols(); ++c) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      s += model.alphas(i, c) * (kx[i] - model.row_means[i] - kx_mean + model.grand_mean);
    y[c] = s;
  }
  return y;
}

Matrix kpca_project_all(const KpcaModel& model, const Matrix& data) {
  Matrix out(data.rows(), model.alphas.cols());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto y = kpca_project(model, data.row(i));
    for (std::size_t c = 0; c < y.size(); ++c) out(i, c) = y[c];
  }
  return out;
}

double gaussian_sigma_auto(const Matrix& data) {
  const std::size_t n = data.rows();
  if (n < 2) throw InvalidArgument("gaussian_sigma_auto: need at least two samples");
  const std::size_t total_pairs = n * (n - 1) / 2;
  constexpr std::size_t kSample = 1000;

  double sum = 0.0;
  std::size_t count = 0;
  if (total_pairs <= kSample) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        sum += euclidean(data.row(i), data.row(j));
        ++count;
      }
  } else {
    Rng rng(0x5EEDu); // fixed: the value must be a pure function of the data
    for (std::size_t s = 0; s < kSample; ++s) {
      const auto i = static_cast<std::size_t>(rng.below(n));
      auto j = static_cast<std::size_t>(rng.below(n - 1));
      if (j >= i) ++j;
      sum += euclidean(data.row(i), data.row(j));
      ++count;
    }
  }
  const double sigma = sum / static_cast<double>(count);
  return sigma > 1e-6 ? sigma : 1e-6;
}

} // namespace mdsfeat
