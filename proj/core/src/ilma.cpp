#include "mdsfeat/ilma.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/point_placement.hpp"
#include "mdsfeat/stress.hpp"

namespace mdsfeat {

LeastSquaresProblem point_placement_problem(const Matrix& codes,
                                            std::span<const std::size_t> anchors,
                                            std::span<const double> targets) {
  const std::size_t m = codes.cols();
  LeastSquaresProblem p;
  p.parameter_count = m;
  p.residual_count = anchors.size();

  p.residuals = [&codes, anchors, targets, m](std::span<const double> x, std::span<double> r) {
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const auto a = codes.row(anchors[i]);
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double dj = x[j] - a[j];
        s += dj * dj;
      }
      double dist = std::sqrt(s);
      if (dist < 1e-12) dist = 1e-9; // perturbed along e1, see jacobian
      r[i] = dist - targets[i];
    }
  };

  p.jacobian = [&codes, anchors, m](std::span<const double> x, Matrix& jac) {
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const auto a = codes.row(anchors[i]);
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double dj = x[j] - a[j];
        s += dj * dj;
      }
      const double dist = std::sqrt(s);
      if (dist < 1e-12) {
        jac(i, 0) = 1.0; // d/dx of ||x - a|| along the fixed perturbation e1
        for (std::size_t j = 1; j < m; ++j) jac(i, j) = 0.0;
      } else {
        for (std::size_t j = 0; j < m; ++j) jac(i, j) = (x[j] - a[j]) / dist;
      }
    }
  };
  return p;
}

double point_placement_objective(const Matrix& codes, std::span<const std::size_t> anchors,
                                 std::span<const double> targets, std::span<const double> x) {
  double cost = 0.0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const double e = euclidean(codes.row(anchors[i]), x) - targets[i];
    cost += e * e;
  }
  return cost;
}

namespace {

struct PairChoice {
  std::size_t i = 0, j = 0;
};

// uniform unit direction, rejecting tiny vectors for numerical safety
std::vector<double> random_direction(std::size_t m, Rng& rng) {
  std::vector<double> u(m);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& v : u) {
      v = rng.uniform(-1.0, 1.0);
      norm += v * v;
    }
    norm = std::sqrt(norm);
  } while (norm < 1e-3);
  for (auto& v : u) v /= norm;
  return u;
}

PairChoice initial_pair(const DistanceMatrix& d, InitStrategy strategy, Rng& rng) {
  const std::size_t n = d.size();
  if (strategy == InitStrategy::random) {
    // uniform over the n(n-1)/2 upper-triangle entries
    auto k = rng.below(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row_len = n - 1 - i;
      if (k < row_len) return {i, i + 1 + static_cast<std::size_t>(k)};
      k -= row_len;
    }
    return {0, 1}; // unreachable
  }
  const bool largest = strategy == InitStrategy::largest_first;
  PairChoice best{0, 1};
  double best_v = d(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = d(i, j);
      if (largest ? v > best_v : v < best_v) {
        best = {i, j};
        best_v = v;
      }
    }
  }
  return best;
}

// solve one point against the current anchor set, keeping whichever of the
// warm start and the LM solution has the lower plain objective
void place_point(Matrix& codes, std::size_t target_row,
                 std::span<const std::size_t> anchors, std::span<const double> targets,
                 std::span<const double> x0, const LmOptions& lm) {
  const auto problem = point_placement_problem(codes, anchors, targets);
  const LmResult res = lm_minimize(problem, x0, lm);
  const double cost_start = point_placement_objective(codes, anchors, targets, x0);
  const double cost_sol = point_placement_objective(codes, anchors, targets, res.solution);
  const auto& chosen = cost_sol <= cost_start
                           ? res.solution
                           : std::vector<double>(x0.begin(), x0.end());
  for (std::size_t j = 0; j < codes.cols(); ++j) codes(target_row, j) = chosen[j];
}

} // namespace

IlmaInit ilma_init(const DistanceMatrix& d, std::size_t m, InitStrategy strategy, Rng& rng,
                   const LmOptions& lm) {
  const std::size_t n = d.size();
  if (n < 2) throw InvalidArgument("ilma_init: need at least two items");
  if (m < 1) throw InvalidArgument("ilma_init: dimension must be at least 1");

  IlmaInit out;
  out.codes = Matrix(n, m);
  out.insertion_order.reserve(n);

  const PairChoice start = initial_pair(d, strategy, rng);
  out.codes(start.j, 0) = d(start.i, start.j);
  out.insertion_order.push_back(start.i);
  out.insertion_order.push_back(start.j);

  std::vector<bool> placed(n, false);
  placed[start.i] = placed[start.j] = true;

  // for largest/smallest-first: best anchor per unplaced point, ties to the
  // lexicographically smallest (anchor, point) pair
  const bool greedy = strategy != InitStrategy::random;
  const bool largest = strategy == InitStrategy::largest_first;
  std::vector<double> best_val(n);
  std::vector<std::size_t> best_anchor(n);
  auto absorb_anchor = [&](std::size_t a) {
    for (std::size_t j = 0; j < n; ++j) {
      if (placed[j]) continue;
      const double v = d(a, j);
      const bool better = largest ? v > best_val[j] : v < best_val[j];
      if (better || (v == best_val[j] && a < best_anchor[j])) {
        best_val[j] = v;
        best_anchor[j] = a;
      }
    }
  };
  if (greedy) {
    for (std::size_t j = 0; j < n; ++j) {
      best_val[j] = largest ? -std::numeric_limits<double>::infinity()
                            : std::numeric_limits<double>::infinity();
      best_anchor[j] = n;
    }
    absorb_anchor(start.i);
    absorb_anchor(start.j);
  }

  std::vector<std::size_t> anchors = {start.i, start.j};
  std::vector<double> targets;
  std::vector<double> x0(m);

  while (out.insertion_order.size() < n) {
    std::size_t next = n;
    if (greedy) {
      for (std::size_t j = 0; j < n; ++j) {
        if (placed[j]) continue;
        if (next == n) {
          next = j;
          continue;
        }
        const bool better = largest ? best_val[j] > best_val[next] : best_val[j] < best_val[next];
        const bool tie = best_val[j] == best_val[next];
        const bool lex = best_anchor[j] < best_anchor[next] ||
                         (best_anchor[j] == best_anchor[next] && j < next);
        if (better || (tie && lex)) next = j;
      }
    } else {
      auto pick = rng.below(n - out.insertion_order.size());
      for (std::size_t j = 0; j < n; ++j) {
        if (placed[j]) continue;
        if (pick == 0) {
          next = j;
          break;
        }
        --pick;
      }
    }

    targets.resize(anchors.size());
    std::size_t nearest_anchor = anchors[0];
    double nearest_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      targets[i] = d(next, anchors[i]);
      if (targets[i] < nearest_dist) {
        nearest_dist = targets[i];
        nearest_anchor = anchors[i];
      }
    }

    // start on a random sphere around the nearest anchor at the target
    // radius; a start exactly on the axis of existing anchors can trap LM
    const auto dir = random_direction(m, rng);
    const double radius = std::max(nearest_dist, 1e-9);
    for (std::size_t j = 0; j < m; ++j) x0[j] = out.codes(nearest_anchor, j) + radius * dir[j];

    place_point(out.codes, next, anchors, targets, x0, lm);
    placed[next] = true;
    out.insertion_order.push_back(next);
    anchors.push_back(next);
    if (greedy) absorb_anchor(next);
  }
  return out;
}

std::pair<Embedding, RunTrace> ilma_fit(const DistanceMatrix& d, std::size_t m,
                                        const IlmaOptions& opts) {
  const std::size_t n = d.size();
  if (n < 2) throw InvalidArgument("ilma_fit: need at least two items");
  if (m < 1) throw InvalidArgument("ilma_fit: dimension must be at least 1");
  if (opts.max_adjustment_iterations < 1)
    throw InvalidArgument("ilma_fit: max_adjustment_iterations must be at least 1");
  if (!(opts.relative_stress_tolerance > 0))
    throw InvalidArgument("ilma_fit: relative_stress_tolerance must be positive");

  Rng rng(opts.seed);
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  IlmaInit init = ilma_init(d, m, opts.init_strategy, rng, opts.lm);
  Matrix& codes = init.codes;

  RunTrace trace;
  double prev = raw_stress(d, codes);
  trace.add(0, prev, elapsed());

  std::vector<std::size_t> anchors(n - 1);
  std::vector<double> targets(n - 1);

  for (std::size_t sweep = 1; sweep <= opts.max_adjustment_iterations; ++sweep) {
    const auto order = random_permutation(n, rng);
    for (const std::size_t s : order) {
      std::size_t w = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == s) continue;
        anchors[w] = i;
        targets[w] = d(s, i);
        ++w;
      }
      place_point(codes, s, anchors, targets, codes.row(s), opts.lm);
    }
    const double cur = raw_stress(d, codes);
    trace.add(sweep, cur, elapsed());
    if (prev <= 0.0) break;
    if ((prev - cur) / prev < opts.relative_stress_tolerance) break;
    prev = cur;
  }

  Embedding emb;
  emb.codes = std::move(codes);
  emb.dimension = m;
  emb.refresh_stress(d);
  return {std::move(emb), std::move(trace)};
}

} // namespace mdsfeat
