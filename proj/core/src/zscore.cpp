#include "mdsfeat/zscore.hpp"

#include <cmath>

#include "mdsfeat/errors.hpp"

namespace mdsfeat {

ZscoreStats zscore_fit_apply(Matrix& train, std::vector<Matrix*> others) {
  const std::size_t n = train.rows();
  const std::size_t d = train.cols();
  if (n == 0) throw InvalidArgument("zscore_fit_apply: empty training matrix");

  ZscoreStats stats;
  stats.means.assign(d, 0.0);
  stats.stds.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) stats.means[j] += train(i, j);
  for (auto& v : stats.means) v /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double c = train(i, j) - stats.means[j];
      stats.stds[j] += c * c;
    }
  for (auto& v : stats.stds) v = std::sqrt(v / static_cast<double>(n));

  auto apply = [&](Matrix& m) {
    if (m.cols() != d) throw DimensionError("zscore_fit_apply: column count mismatch");
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const double c = m(i, j) - stats.means[j];
        m(i, j) = stats.stds[j] > 0.0 ? c / stats.stds[j] : c;
      }
  };
  apply(train);
  for (Matrix* m : others)
    if (m) apply(*m);
  return stats;
}

} // namespace mdsfeat
