#include "mdsfeat/gray_image.hpp"

#include <cmath>
#include <string>

#include "mdsfeat/errors.hpp"

namespace mdsfeat {

double euclidean_distance(const GrayImage& a, const GrayImage& b) {
  if (!a.same_size(b)) {
    throw DimensionError("euclidean_distance: image sizes differ (" + std::to_string(a.height) +
                         "x" + std::to_string(a.width) + " vs " + std::to_string(b.height) + "x" +
                         std::to_string(b.width) + ")");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = a.pixels[i] - b.pixels[i];
    s += d * d;
  }
  return std::sqrt(s);
}

} // namespace mdsfeat
