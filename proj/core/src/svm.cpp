#include "mdsfeat/svm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mdsfeat/errors.hpp"

namespace mdsfeat {

double rbf_kernel(std::span<const double> u, std::span<const double> v, double gamma) {
  return std::exp(-squared_euclidean(u, v) / gamma);
}

SvmModel svm_train(const Matrix& features, const std::vector<int>& labels,
                   const SvmOptions& opts) {
  const std::size_t n = features.rows();
  if (labels.size() != n) throw DimensionError("svm_train: label count mismatch");
  if (n < 2) throw InvalidArgument("svm_train: need at least two samples");
  if (!(opts.c > 0.0)) throw InvalidArgument("svm_train: C must be positive");
  if (!(opts.gamma > 0.0)) throw InvalidArgument("svm_train: gamma must be positive");

  bool has_pos = false, has_neg = false;
  for (int y : labels) {
    if (y == 1) has_pos = true;
    else if (y == -1) has_neg = true;
    else throw InvalidArgument("svm_train: labels must be +1 or -1");
  }
  if (!has_pos || !has_neg)
    throw InvalidArgument("svm_train: both classes must be present");

  // kernel matrix (n is at most ~1000 in this project)
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      k(i, j) = k(j, i) = rbf_kernel(features.row(i), features.row(j), opts.gamma);

  const double c = opts.c;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0); // G_i = sum_j Q_ij alpha_j - 1
  const auto y = [&](std::size_t i) { return static_cast<double>(labels[i]); };
  const auto q = [&](std::size_t i, std::size_t j) { return y(i) * y(j) * k(i, j); };

  auto in_up = [&](std::size_t i) {
    return (labels[i] == 1 && alpha[i] < c) || (labels[i] == -1 && alpha[i] > 0.0);
  };
  auto in_low = [&](std::size_t i) {
    return (labels[i] == 1 && alpha[i] > 0.0) || (labels[i] == -1 && alpha[i] < c);
  };

  constexpr double tau = 1e-12;
  std::size_t iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    // maximal violating pair
    std::size_t i = n, j = n;
    double up_best = -std::numeric_limits<double>::infinity();
    double low_best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y(t) * grad[t];
      if (in_up(t) && v > up_best) {
        up_best = v;
        i = t;
      }
      if (in_low(t) && v < low_best) {
        low_best = v;
        j = t;
      }
    }
    if (i == n || j == n || up_best - low_best < opts.tolerance) break;

    const double old_ai = alpha[i], old_aj = alpha[j];
    if (labels[i] != labels[j]) {
      double quad = k(i, i) + k(j, j) + 2.0 * k(i, j);
      if (quad <= 0.0) quad = tau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0 && alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = diff;
      } else if (diff <= 0.0 && alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0 && alpha[i] > c) {
        alpha[i] = c;
        alpha[j] = c - diff;
      } else if (diff <= 0.0 && alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = k(i, i) + k(j, j) - 2.0 * k(i, j);
      if (quad <= 0.0) quad = tau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c && alpha[i] > c) {
        alpha[i] = c;
        alpha[j] = sum - c;
      } else if (sum <= c && alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c && alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = sum - c;
      } else if (sum <= c && alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) grad[t] += q(t, i) * dai + q(t, j) * daj;

    if (opts.dual_objective_hook) {
      double obj = 0.0; // W = sum alpha - 0.5 alpha^T Q alpha, via the gradient
      for (std::size_t t = 0; t < n; ++t) obj += alpha[t] - 0.5 * alpha[t] * (grad[t] + 1.0);
      opts.dual_objective_hook(obj);
    }
  }

  // bias from free vectors, else the midpoint of the violation bounds
  double free_sum = 0.0;
  std::size_t free_count = 0;
  double up_best = -std::numeric_limits<double>::infinity();
  double low_best = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    const double v = -y(t) * grad[t];
    if (alpha[t] > 0.0 && alpha[t] < c) {
      free_sum += v;
      ++free_count;
    }
    if (in_up(t)) up_best = std::max(up_best, v);
    if (in_low(t)) low_best = std::min(low_best, v);
  }
  const double bias = free_count > 0 ? free_sum / static_cast<double>(free_count)
                                     : 0.5 * (up_best + low_best);

  SvmModel model;
  model.bias = bias;
  model.rbf_gamma = opts.gamma;
  model.box_c = c;
  std::size_t sv_count = 0;
  for (double a : alpha)
    if (a > 0.0) ++sv_count;
  model.support_vectors = Matrix(sv_count, features.cols());
  std::size_t w = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] <= 0.0) continue;
    for (std::size_t col = 0; col < features.cols(); ++col)
      model.support_vectors(w, col) = features(t, col);
    model.dual_coefficients.push_back(y(t) * alpha[t]);
    model.alphas.push_back(alpha[t]);
    model.sv_labels.push_back(labels[t]);
    ++w;
  }
  return model;
}

double svm_decision(const SvmModel& model, std::span<const double> x) {
  double s = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.rows(); ++i)
    s += model.dual_coefficients[i] * rbf_kernel(model.support_vectors.row(i), x, model.rbf_gamma);
  return s;
}

int svm_predict(const SvmModel& model, std::span<const double> x) {
  return svm_decision(model, x) >= 0.0 ? 1 : -1;
}

} // namespace mdsfeat
