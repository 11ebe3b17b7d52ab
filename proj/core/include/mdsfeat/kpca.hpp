#pragma once

#include "mdsfeat/matrix.hpp"

#include <span>
#include <vector>

namespace mdsfeat {

enum class KernelKind { gaussian, polynomial3, linear };

struct KernelParams {
  KernelKind kind = KernelKind::gaussian;
  double sigma = 1.0; // gaussian width, k(x,y) = exp(-||x-y||^2 / 2 sigma^2)
};

double kernel_eval(const KernelParams& k, std::span<const double> x, std::span<const double> y);

/// Centered-kernel PCA model. Projections of new points center their kernel
/// row against the stored training row means and grand mean.
struct KpcaModel {
  KernelParams kernel;
  Matrix training_points;            // n x d
  Matrix alphas;                     // n x m_eff, scaled eigenvectors
  std::vector<double> row_means;     // per training point, means of K
  double grand_mean = 0.0;
  std::size_t requested_dim = 0;
  bool reduced_rank = false; // fewer positive eigenvalues than requested

  std::size_t output_dim() const { return alphas.cols(); }
};

/// K~ = K - 1K - K1 + 1K1 with 1 = (1/n) ones.
Matrix center_gram(const Matrix& k);

/// Solves K~ a = lambda n a; keeps components with positive eigenvalues and
/// scales each eigenvector to unit feature-space norm, which makes the
/// linear kernel reproduce plain PCA.
KpcaModel kpca_fit(const Matrix& data, const KernelParams& kernel, std::size_t m);

std::vector<double> kpca_project(const KpcaModel& model, std::span<const double> x);
Matrix kpca_project_all(const KpcaModel& model, const Matrix& data);

/// Data-driven Gaussian width: mean pairwise distance over at most 1000
/// pairs (all pairs when fewer), sampled with a fixed internal seed so the
/// value is a pure function of the data. Floors at 1e-6 for degenerate data.
double gaussian_sigma_auto(const Matrix& data);

} // namespace mdsfeat
