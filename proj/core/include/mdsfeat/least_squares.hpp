#pragma once

#include "mdsfeat/matrix.hpp"

#include <functional>
#include <span>
#include <vector>

namespace mdsfeat {

/// Sum-of-squared-residuals problem. `residuals` fills a vector of fixed
/// length `residual_count` from a parameter vector of length
/// `parameter_count`. `jacobian` (residual_count x parameter_count) is
/// optional; a forward-difference approximation is used when absent.
struct LeastSquaresProblem {
  std::size_t parameter_count = 0;
  std::size_t residual_count = 0;
  std::function<void(std::span<const double>, std::span<double>)> residuals;
  std::function<void(std::span<const double>, Matrix&)> jacobian;
};

struct LmOptions {
  double initial_damping = 1e-3;
  double damping_up_factor = 10.0;   // multiplied on a rejected step
  double damping_down_factor = 10.0; // divided on an accepted step
  std::size_t max_iterations = 100;
  double gradient_tolerance = 1e-10; // infinity norm of J^T r
  double step_tolerance = 1e-10;     // relative step norm
};

enum class LmTermination { gradient, step, max_iterations };

struct LmResult {
  std::vector<double> solution;
  double final_cost = 0.0; // sum of squared residuals
  std::size_t iterations = 0;
  LmTermination termination = LmTermination::max_iterations;
  std::vector<double> accepted_costs; // cost after each accepted step, starting at x0
};

/// Classic Levenberg-Marquardt: damped normal equations solved by Cholesky,
/// damping scaled up on rejection and down on acceptance. Cost over accepted
/// steps is non-increasing. Throws NumericalError (carrying the last good
/// iterate) when residuals or jacobian turn non-finite at an accepted point.
LmResult lm_minimize(const LeastSquaresProblem& problem, std::span<const double> x0,
                     const LmOptions& opts = {});

} // namespace mdsfeat
