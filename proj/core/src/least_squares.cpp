#include "mdsfeat/least_squares.hpp"

#include <cmath>
#include <limits>

#include "mdsfeat/errors.hpp"

namespace mdsfeat {

namespace {

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

// cost comparisons in extended precision: near the optimum the improvement
// per step falls below double rounding of the total cost, which would stall
// quadratic problems around 1e-7 relative error
long double cost_of(std::span<const double> v) {
  long double s = 0.0L;
  for (double x : v) s += static_cast<long double>(x) * static_cast<long double>(x);
  return s;
}

// In-place Cholesky solve of A x = b for symmetric positive definite A.
// Returns false when a pivot is not positive.
bool cholesky_solve(Matrix a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = a.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= a(j, k) * a(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag)) return false;
    const double ljj = std::sqrt(diag);
    a(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
      a(i, j) = s / ljj;
    }
  }
  // forward then back substitution
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= a(i, k) * b[k];
    b[i] = s / a(i, i);
  }
  x.assign(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= a(k, ii) * x[k];
    x[ii] = s / a(ii, ii);
  }
  return true;
}

void forward_difference_jacobian(const LeastSquaresProblem& problem,
                                 std::span<const double> x, std::span<const double> r0,
                                 Matrix& jac) {
  std::vector<double> xt(x.begin(), x.end());
  std::vector<double> rt(problem.residual_count);
  for (std::size_t j = 0; j < problem.parameter_count; ++j) {
    const double h = 1.4901161193847656e-08 * std::max(1.0, std::abs(x[j]));
    const double saved = xt[j];
    xt[j] = saved + h;
    problem.residuals(xt, rt);
    xt[j] = saved;
    for (std::size_t i = 0; i < problem.residual_count; ++i)
      jac(i, j) = (rt[i] - r0[i]) / h;
  }
}

} // namespace

LmResult lm_minimize(const LeastSquaresProblem& problem, std::span<const double> x0,
                     const LmOptions& opts) {
  const std::size_t p = problem.parameter_count;
  const std::size_t m = problem.residual_count;
  if (x0.size() != p)
    throw DimensionError("lm_minimize: x0 length " + std::to_string(x0.size()) +
                         " does not match parameter count " + std::to_string(p));
  if (!problem.residuals) throw InvalidArgument("lm_minimize: residual evaluator missing");

  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> r(m);
  problem.residuals(x, r);
  if (!all_finite(r))
    throw NumericalError("lm_minimize: non-finite residuals at the initial point", x);
  long double cost = cost_of(r);

  LmResult result;
  result.accepted_costs.push_back(static_cast<double>(cost));

  Matrix jac(m, p);
  std::vector<double> grad(p), step(p), xt(p), rt(m);
  double lambda = opts.initial_damping;

  std::size_t iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    if (problem.jacobian) {
      problem.jacobian(x, jac);
    } else {
      forward_difference_jacobian(problem, x, r, jac);
    }
    if (!jac.all_finite())
      throw NumericalError("lm_minimize: non-finite jacobian", x);

    // grad = J^T r, normal matrix N = J^T J
    Matrix normal(p, p);
    for (std::size_t j = 0; j < p; ++j) {
      double g = 0.0;
      for (std::size_t i = 0; i < m; ++i) g += jac(i, j) * r[i];
      grad[j] = g;
    }
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = a; b < p; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += jac(i, a) * jac(i, b);
        normal(a, b) = normal(b, a) = s;
      }
    }

    double gmax = 0.0;
    for (double g : grad) gmax = std::max(gmax, std::abs(g));
    if (gmax <= opts.gradient_tolerance) {
      result.termination = LmTermination::gradient;
      break;
    }

    bool accepted = false;
    bool small_step = false;
    while (!accepted) {
      Matrix damped = normal;
      for (std::size_t a = 0; a < p; ++a) damped(a, a) += lambda;
      std::vector<double> rhs(p);
      for (std::size_t a = 0; a < p; ++a) rhs[a] = -grad[a];

      if (!cholesky_solve(std::move(damped), std::move(rhs), step)) {
        lambda *= opts.damping_up_factor;
        if (!std::isfinite(lambda)) {
          result.termination = LmTermination::step;
          small_step = true;
          break;
        }
        continue;
      }

      const double xnorm = std::sqrt(squared_norm(x));
      const double snorm = std::sqrt(squared_norm(step));
      if (snorm <= opts.step_tolerance * (xnorm + opts.step_tolerance)) {
        result.termination = LmTermination::step;
        small_step = true;
        break;
      }

      for (std::size_t a = 0; a < p; ++a) xt[a] = x[a] + step[a];
      problem.residuals(xt, rt);
      const long double new_cost = all_finite(rt)
                                       ? cost_of(rt)
                                       : std::numeric_limits<long double>::infinity();
      // non-strict: equal-cost steps keep x moving once improvements fall
      // below rounding, letting the gradient test fire instead of stalling
      if (new_cost <= cost) {
        x = xt;
        r = rt;
        cost = new_cost;
        lambda = std::max(lambda / opts.damping_down_factor, 1e-15);
        accepted = true;
        result.accepted_costs.push_back(static_cast<double>(cost));
      } else {
        lambda *= opts.damping_up_factor;
        if (!std::isfinite(lambda)) {
          result.termination = LmTermination::step;
          small_step = true;
          break;
        }
      }
    }
    if (small_step) break;
  }

  result.solution = std::move(x);
  result.final_cost = static_cast<double>(cost);
  result.iterations = iter;
  return result;
}

} // namespace mdsfeat
