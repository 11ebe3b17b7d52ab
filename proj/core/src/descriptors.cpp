#include "mdsfeat/descriptors.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mdsfeat/errors.hpp"

namespace mdsfeat {

std::size_t orientation_bin(double gx, double gy) {
  const double theta = std::atan2(gy, gx); // [-pi, pi]
  const double t = (theta + std::numbers::pi) / (2.0 * std::numbers::pi);
  auto bin = static_cast<std::size_t>(t * 8.0);
  return bin >= 8 ? 7 : bin;
}

std::vector<LocalDescriptor> dense_descriptors(const GrayImage& img, std::size_t step,
                                               std::size_t patch) {
  if (step == 0) throw InvalidArgument("dense_descriptors: step must be positive");
  if (patch < 4) throw InvalidArgument("dense_descriptors: patch must be at least 4 pixels");
  if (patch > img.height || patch > img.width) {
    throw InvalidArgument("dense_descriptors: patch " + std::to_string(patch) +
                          " exceeds image " + std::to_string(img.height) + "x" +
                          std::to_string(img.width));
  }

  const std::size_t h = img.height, w = img.width;
  auto clamp = [](std::ptrdiff_t v, std::size_t hi) {
    return static_cast<std::size_t>(std::max<std::ptrdiff_t>(
        0, std::min<std::ptrdiff_t>(v, static_cast<std::ptrdiff_t>(hi) - 1)));
  };

  // central-difference gradients with replicated borders
  std::vector<double> gx(h * w), gy(h * w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const double right = img.at(r, clamp(static_cast<std::ptrdiff_t>(c) + 1, w));
      const double left = img.at(r, clamp(static_cast<std::ptrdiff_t>(c) - 1, w));
      const double down = img.at(clamp(static_cast<std::ptrdiff_t>(r) + 1, h), c);
      const double up = img.at(clamp(static_cast<std::ptrdiff_t>(r) - 1, h), c);
      gx[r * w + c] = 0.5 * (right - left);
      gy[r * w + c] = 0.5 * (down - up);
    }
  }

  std::vector<LocalDescriptor> out;
  const std::size_t cell = patch / 4;
  for (std::size_t r0 = 0; r0 + patch <= h; r0 += step) {
    for (std::size_t c0 = 0; c0 + patch <= w; c0 += step) {
      LocalDescriptor desc;
      desc.row = static_cast<double>(r0) + static_cast<double>(patch) / 2.0;
      desc.col = static_cast<double>(c0) + static_cast<double>(patch) / 2.0;

      for (std::size_t dr = 0; dr < patch; ++dr) {
        const std::size_t cr = std::min(dr / cell, std::size_t{3});
        for (std::size_t dc = 0; dc < patch; ++dc) {
          const std::size_t cc = std::min(dc / cell, std::size_t{3});
          const std::size_t idx = (r0 + dr) * w + (c0 + dc);
          const double mag = std::hypot(gx[idx], gy[idx]);
          if (mag == 0.0) continue;
          const std::size_t bin = orientation_bin(gx[idx], gy[idx]);
          desc.vector[(cr * 4 + cc) * 8 + bin] += mag;
        }
      }

      double norm = 0.0;
      for (double v : desc.vector) norm += v * v;
      norm = std::sqrt(norm);
      if (norm > 1e-12) {
        for (auto& v : desc.vector) v = std::min(v / norm, 0.2);
        double n2 = 0.0;
        for (double v : desc.vector) n2 += v * v;
        n2 = std::sqrt(n2);
        if (n2 > 1e-12)
          for (auto& v : desc.vector) v /= n2;
      } else {
        desc.vector.fill(0.0); // flat patch
      }
      out.push_back(desc);
    }
  }
  return out;
}

Matrix descriptor_matrix(const std::vector<LocalDescriptor>& descs) {
  Matrix m(descs.size(), kDescriptorDim);
  for (std::size_t i = 0; i < descs.size(); ++i)
    for (std::size_t j = 0; j < kDescriptorDim; ++j) m(i, j) = descs[i].vector[j];
  return m;
}

} // namespace mdsfeat
