#include "mdsfeat/encode.hpp"

#include <cmath>
#include <numeric>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/point_placement.hpp"

namespace mdsfeat {

std::vector<double> encode_new(const Embedding& train, std::span<const double> dists,
                               const LmOptions& lm) {
  const std::size_t n = train.codes.rows();
  if (n == 0) throw InvalidArgument("encode_new: embedding has no training items");
  if (dists.size() != n)
    throw DimensionError("encode_new: got " + std::to_string(dists.size()) +
                         " distances for " + std::to_string(n) + " training items");
  for (double v : dists) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw InvalidArgument("encode_new: distances must be finite and nonnegative");
  }

  std::size_t nearest = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (dists[i] < dists[nearest]) nearest = i;

  std::vector<std::size_t> anchors(n);
  std::iota(anchors.begin(), anchors.end(), std::size_t{0});

  std::vector<double> x0(train.codes.row(nearest).begin(), train.codes.row(nearest).end());
  const auto problem = point_placement_problem(train.codes, anchors, dists);
  const LmResult res = lm_minimize(problem, x0, lm);

  const double at_start = point_placement_objective(train.codes, anchors, dists, x0);
  const double at_solution = point_placement_objective(train.codes, anchors, dists, res.solution);
  return at_solution <= at_start ? res.solution : x0;
}

double encode_objective(const Embedding& train, std::span<const double> dists,
                        std::span<const double> code) {
  std::vector<std::size_t> anchors(train.codes.rows());
  std::iota(anchors.begin(), anchors.end(), std::size_t{0});
  return point_placement_objective(train.codes, anchors, dists, code);
}

} // namespace mdsfeat
