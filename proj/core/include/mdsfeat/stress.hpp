#pragma once

#include "mdsfeat/distance_matrix.hpp"
#include "mdsfeat/matrix.hpp"

namespace mdsfeat {

/// Sum over unordered pairs of (d_ij - ||x_i - x_j||)^2.
double raw_stress(const DistanceMatrix& d, const Matrix& codes);

/// sqrt(raw_stress / sum ||x_i - x_j||^2); throws DegenerateConfiguration
/// when all embedded points coincide.
double stress1(const DistanceMatrix& d, const Matrix& codes);

} // namespace mdsfeat
