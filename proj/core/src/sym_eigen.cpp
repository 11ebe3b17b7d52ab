#include "mdsfeat/sym_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mdsfeat/errors.hpp"

namespace mdsfeat {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
  return std::sqrt(2.0 * s);
}

} // namespace

SymEigen sym_eigen(const Matrix& input) {
  const std::size_t n = input.rows();
  if (n == 0 || input.cols() != n) {
    throw DimensionError("sym_eigen: matrix must be square and non-empty");
  }
  if (!input.all_finite()) throw NumericalError("sym_eigen: non-finite entries");
  if (input.asymmetry() > 1e-10 * std::max(1.0, input.max_abs())) {
    throw DimensionError("sym_eigen: matrix is not symmetric");
  }

  Matrix a = input;
  // force exact symmetry so row/col updates stay consistent
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(j, i) = a(i, j) = 0.5 * (a(i, j) + a(j, i));

  Matrix v = Matrix::identity(n);
  const double fro = a.frobenius_norm();
  const double threshold = 1e-12 * fro;
  constexpr int kMaxSweeps = 100;

  double* ad = a.data().data();
  double* vd = v.data().data();

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = ad[p * n + q];
        if (apq == 0.0) continue;
        const double app = ad[p * n + p];
        const double aqq = ad[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = ad[k * n + p];
          const double akq = ad[k * n + q];
          ad[k * n + p] = c * akp - s * akq;
          ad[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = ad[p * n + k];
          const double aqk = ad[q * n + k];
          ad[p * n + k] = c * apk - s * aqk;
          ad[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = vd[k * n + p];
          const double vkq = vd[k * n + q];
          vd[k * n + p] = c * vkp - s * vkq;
          vd[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

Matrix spectral_sqrt(const SymEigen& eig, double clip) {
  const std::size_t n = eig.eigenvectors.rows();
  Matrix out(n, n);
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    roots[k] = lambda > clip ? std::sqrt(lambda) : 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += eig.eigenvectors(i, k) * roots[k] * eig.eigenvectors(j, k);
      out(i, j) = out(j, i) = s;
    }
  }
  return out;
}

} // namespace mdsfeat
