#pragma once

#include <cstddef>
#include <vector>

namespace mdsfeat {

/// Row-major intensity grid. Loaders scale to [0, 1]; computed images (e.g.
/// the standardizing transform) may leave that range.
struct GrayImage {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> pixels; // height * width, row-major

  GrayImage() = default;
  GrayImage(std::size_t h, std::size_t w, double fill = 0.0)
      : height(h), width(w), pixels(h * w, fill) {}

  double& at(std::size_t r, std::size_t c) { return pixels[r * width + c]; }
  double at(std::size_t r, std::size_t c) const { return pixels[r * width + c]; }
  std::size_t pixel_count() const { return pixels.size(); }

  bool same_size(const GrayImage& other) const {
    return height == other.height && width == other.width;
  }
};

/// Plain Euclidean distance on intensities; throws DimensionError when the
/// images differ in size.
double euclidean_distance(const GrayImage& a, const GrayImage& b);

} // namespace mdsfeat
