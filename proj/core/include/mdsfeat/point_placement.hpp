#pragma once

#include "mdsfeat/least_squares.hpp"
#include "mdsfeat/matrix.hpp"

#include <span>

namespace mdsfeat {

/// Least squares problem for placing one point against fixed anchors:
/// residual_i(x) = ||x - codes[anchor_i]|| - target_i.
///
/// At a coincident point the norm has no gradient, so the difference vector
/// is replaced by a fixed unit direction scaled 1e-9, keeping runs
/// deterministic. The spans must stay valid for the lifetime of the problem;
/// `codes` must not be mutated while solving.
LeastSquaresProblem point_placement_problem(const Matrix& codes,
                                            std::span<const std::size_t> anchors,
                                            std::span<const double> targets);

/// Plain objective sum_i (||x - codes[anchor_i]|| - target_i)^2, without the
/// coincident-point perturbation.
double point_placement_objective(const Matrix& codes, std::span<const std::size_t> anchors,
                                 std::span<const double> targets, std::span<const double> x);

} // namespace mdsfeat
