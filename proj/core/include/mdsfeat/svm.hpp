#pragma once

#include "mdsfeat/matrix.hpp"

#include <functional>
#include <span>
#include <vector>

namespace mdsfeat {

/// RBF kernel in the form exp(-||u - v||^2 / gamma).
double rbf_kernel(std::span<const double> u, std::span<const double> v, double gamma);

struct SvmOptions {
  double c = 1.0;
  double gamma = 1.0;
  double tolerance = 1e-3;          // KKT violation gap
  std::size_t max_iterations = 100000;
  std::function<void(double)> dual_objective_hook; // called after each pair update
};

struct SvmModel {
  Matrix support_vectors;                 // rows with positive alpha
  std::vector<double> dual_coefficients;  // y_i alpha_i per support vector
  std::vector<double> alphas;             // alpha per support vector
  std::vector<int> sv_labels;
  double bias = 0.0;
  double rbf_gamma = 1.0;
  double box_c = 1.0;
};

/// Sequential minimal optimization on the soft-margin dual, selecting the
/// maximal violating pair each step. Labels must be +1/-1 with both classes
/// present.
SvmModel svm_train(const Matrix& features, const std::vector<int>& labels,
                   const SvmOptions& opts);

double svm_decision(const SvmModel& model, std::span<const double> x);

/// sign of the decision value; ties resolve to +1.
int svm_predict(const SvmModel& model, std::span<const double> x);

} // namespace mdsfeat
