#pragma once

#include "mdsfeat/descriptors.hpp"
#include "mdsfeat/vocabulary.hpp"

#include <filesystem>
#include <vector>

namespace mdsfeat {

/// Multi-level weighted visual-word histogram of dimension
/// M (4^{L+1} - 1) / 3: level l splits the image into 2^l x 2^l cells, cells
/// are laid out row-major inside each level, levels concatenated from 0.
struct PyramidVector {
  std::size_t levels = 0;       // L
  std::size_t vocab_size = 0;   // M
  std::vector<double> weighted_histogram;
  std::size_t descriptor_count = 0;
  bool empty_input = false; // set when built from no descriptors

  static std::size_t expected_length(std::size_t vocab_size, std::size_t levels);
};

/// Builds the pyramid for one image. Histogram counts are divided by the
/// total descriptor count, then each level is scaled by its weight: 1/2^L
/// for level 0 and 1/2^{L-l+1} for level l >= 1. An empty descriptor list
/// yields the all-zero vector with the warning flag set.
PyramidVector pyramid_vector(const std::vector<LocalDescriptor>& descs, std::size_t img_height,
                             std::size_t img_width, const Vocabulary& vocab,
                             std::size_t levels);

/// Normalized pyramid-match kernel K(a, b) = I(a, b) / sqrt(I(a,a) I(b,b))
/// where I is the histogram-intersection sum over weighted entries, so
/// K(x, x) = 1 and K lies in [0, 1]. Two empty images score 1, an empty
/// against a nonempty scores 0.
double pyramid_match_similarity(const PyramidVector& a, const PyramidVector& b);

/// One pyramid per row, batch CSV.
void save_pyramid_batch(const std::filesystem::path& path,
                        const std::vector<PyramidVector>& batch);

} // namespace mdsfeat
