#include "mdsfeat/spm_distance.hpp"

#include <cmath>
#include <string>

#include "mdsfeat/errors.hpp"

namespace mdsfeat {

namespace {

double checked_similarity(double k, const char* who) {
  // allow roundoff-level overshoot from the kernel normalization
  constexpr double slack = 1e-12;
  if (!(k >= -slack) || !(k <= 1.0 + slack) || !std::isfinite(k)) {
    throw RangeError(std::string(who) + ": similarity " + std::to_string(k) +
                     " outside [0, 1]");
  }
  return std::min(std::max(k, 0.0), 1.0);
}

} // namespace

double spm1_distance(double similarity) {
  return 1.0 - checked_similarity(similarity, "spm1_distance");
}

double spm2_distance(double similarity, double epsilon) {
  const double k = checked_similarity(similarity, "spm2_distance");
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw InvalidArgument("spm2_distance: epsilon must lie in (0, 1)");
  return -std::log((1.0 - epsilon) * k + epsilon);
}

} // namespace mdsfeat
