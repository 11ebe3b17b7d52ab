#pragma once

#include "mdsfeat/matrix.hpp"

#include <vector>

namespace mdsfeat {

/// Eigendecomposition of a symmetric matrix. Eigenvalues are sorted
/// descending; column i of `eigenvectors` pairs with `eigenvalues[i]`.
struct SymEigen {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

/// Cyclic Jacobi rotations. Converges when the off-diagonal Frobenius mass
/// drops below 1e-12 * ||A||_F, capped at 100 sweeps.
///
/// Throws DimensionError for a non-square or asymmetric input (asymmetry
/// above 1e-10 relative to the largest entry) and NumericalError for
/// non-finite input.
SymEigen sym_eigen(const Matrix& a);

/// V diag(f(lambda)) V^T for a spectral function f given as clamped powers;
/// used for matrix square roots. Eigenvalues below `clip` are treated as 0.
Matrix spectral_sqrt(const SymEigen& eig, double clip = 0.0);

} // namespace mdsfeat
