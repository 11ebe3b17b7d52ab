#pragma once

#include "mdsfeat/geodesic.hpp"

#include <cstdint>

namespace mdsfeat {

/// Swiss roll surface sample: points (t cos t, h, t sin t) on a near-uniform
/// grid over t in [1.5 pi, 4.5 pi] and h in [0, 20], jittered inside each
/// grid cell by `noise` (0 disables the jitter entirely).
struct SwissRollSpec {
  std::size_t n = 591;
  double noise = 0.0; // jitter amplitude in cell units, 0..1 is sensible
  std::uint64_t seed = 0;
  double t_min = 4.71238898038469; // 1.5 pi
  double t_max = 14.137166941154069; // 4.5 pi
  double height = 20.0;
};

PointCloud swiss_roll(const SwissRollSpec& spec);

} // namespace mdsfeat
