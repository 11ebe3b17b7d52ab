#include "mdsfeat/smacof.hpp"

#include <chrono>
#include <cmath>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/stress.hpp"

namespace mdsfeat {

std::pair<Embedding, RunTrace> smacof_fit(const DistanceMatrix& d, std::size_t m,
                                          const SmacofOptions& opts) {
  const std::size_t n = d.size();
  if (n < 2) throw InvalidArgument("smacof_fit: need at least two items");
  if (m < 1) throw InvalidArgument("smacof_fit: dimension must be at least 1");

  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  Rng rng(opts.seed);
  const double hi = std::max(d.max_value(), 1.0);
  Matrix x(n, m);
  for (auto& v : x.data()) v = rng.uniform(0.0, hi);

  RunTrace trace;
  double prev = raw_stress(d, x);
  trace.add(0, prev, elapsed());

  Matrix bx(n, m);
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    // X+ = (1/n) B(X) X with b_ij = -d_ij/delta_ij, zero when points coincide
    for (auto& v : bx.data()) v = 0.0;
    std::vector<double> bdiag(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double delta = euclidean(x.row(i), x.row(j));
        if (delta <= 0.0) continue;
        const double b = -d(i, j) / delta;
        bdiag[i] -= b;
        bdiag[j] -= b;
        for (std::size_t k = 0; k < m; ++k) {
          bx(i, k) += b * x(j, k);
          bx(j, k) += b * x(i, k);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < m; ++k)
        x(i, k) = (bx(i, k) + bdiag[i] * x(i, k)) / static_cast<double>(n);

    const double cur = raw_stress(d, x);
    trace.add(it, cur, elapsed());
    const bool out_of_time = trace.samples.back().elapsed_seconds >= opts.time_budget_seconds;
    if (prev <= 0.0 || out_of_time) break;
    if ((prev - cur) / prev < opts.relative_stress_tolerance) break;
    prev = cur;
  }

  Embedding emb;
  emb.codes = std::move(x);
  emb.dimension = m;
  emb.refresh_stress(d);
  return {std::move(emb), std::move(trace)};
}

} // namespace mdsfeat
