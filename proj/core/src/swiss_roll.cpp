#include "mdsfeat/swiss_roll.hpp"

#include <cmath>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/rng.hpp"

namespace mdsfeat {

PointCloud swiss_roll(const SwissRollSpec& spec) {
  if (spec.n < 4) throw InvalidArgument("swiss_roll: need at least 4 points");
  if (spec.noise < 0.0) throw InvalidArgument("swiss_roll: noise must be nonnegative");
  if (!(spec.t_max > spec.t_min)) throw InvalidArgument("swiss_roll: empty t range");

  // grid shape ~ proportional to the unrolled aspect (arc length vs height)
  const double arc = 0.5 * (spec.t_max * std::hypot(1.0, spec.t_max) + std::asinh(spec.t_max)) -
                     0.5 * (spec.t_min * std::hypot(1.0, spec.t_min) + std::asinh(spec.t_min));
  const double ratio = arc / std::max(spec.height, 1e-9);
  auto nt = static_cast<std::size_t>(std::round(std::sqrt(static_cast<double>(spec.n) * ratio)));
  nt = std::min(std::max<std::size_t>(nt, 2), spec.n / 2);
  const std::size_t nh = (spec.n + nt - 1) / nt;

  Rng rng(spec.seed);
  Matrix pts(spec.n, 3);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const std::size_t it = i % nt;
    const std::size_t ih = i / nt;
    double jt = 0.0, jh = 0.0;
    if (spec.noise > 0.0) {
      jt = spec.noise * rng.uniform(-0.5, 0.5);
      jh = spec.noise * rng.uniform(-0.5, 0.5);
    }
    const double u = (static_cast<double>(it) + 0.5 + jt) / static_cast<double>(nt);
    const double v = (static_cast<double>(ih) + 0.5 + jh) / static_cast<double>(nh);
    const double t = spec.t_min + u * (spec.t_max - spec.t_min);
    pts(i, 0) = t * std::cos(t);
    pts(i, 1) = v * spec.height;
    pts(i, 2) = t * std::sin(t);
  }
  return PointCloud{std::move(pts)};
}

} // namespace mdsfeat
