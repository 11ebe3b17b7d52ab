#pragma once

#include "mdsfeat/gray_image.hpp"
#include "mdsfeat/matrix.hpp"

#include <array>
#include <vector>

namespace mdsfeat {

inline constexpr std::size_t kDescriptorDim = 128; // 4x4 cells x 8 orientation bins

/// One dense local descriptor: a SIFT-like gradient-orientation histogram
/// over a square patch, positioned at the patch center. Flat patches give
/// the zero vector; everything else is L2-normalized, clipped at 0.2 and
/// renormalized.
struct LocalDescriptor {
  double row = 0.0;
  double col = 0.0;
  std::array<double, kDescriptorDim> vector{};
};

/// Descriptors on a regular grid: patch top-left corners at multiples of
/// `step` while the patch fits. Gradients are central differences with
/// replicated borders; each pixel votes its gradient magnitude into the
/// orientation bin of its 4x4 spatial cell.
std::vector<LocalDescriptor> dense_descriptors(const GrayImage& img, std::size_t step = 8,
                                               std::size_t patch = 16);

/// Orientation bin (0..7) used by the descriptor for a gradient direction.
std::size_t orientation_bin(double gx, double gy);

/// Stacks descriptor vectors into a matrix, one per row.
Matrix descriptor_matrix(const std::vector<LocalDescriptor>& descs);

} // namespace mdsfeat
