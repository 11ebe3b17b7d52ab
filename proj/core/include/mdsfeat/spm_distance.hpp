#pragma once

namespace mdsfeat {

/// d = 1 - K for a pyramid-match similarity K in [0, 1].
double spm1_distance(double similarity);

/// d = -ln((1 - epsilon) K + epsilon); epsilon in (0, 1) bounds the distance
/// by -ln(epsilon).
double spm2_distance(double similarity, double epsilon = 0.001);

} // namespace mdsfeat
