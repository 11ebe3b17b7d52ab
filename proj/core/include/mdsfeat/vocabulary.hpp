#pragma once

#include "mdsfeat/matrix.hpp"
#include "mdsfeat/rng.hpp"

#include <filesystem>
#include <string>

namespace mdsfeat {

/// k-means visual vocabulary over pooled local descriptors.
struct Vocabulary {
  Matrix centroids; // M x 128

  std::size_t size() const { return centroids.rows(); }

  /// Index of the nearest centroid, ties to the lowest index.
  std::size_t assign(std::span<const double> descriptor) const;

  void save_csv(const std::filesystem::path& path) const;
  static Vocabulary load_csv(const std::filesystem::path& path);
};

/// Clusters the pooled training descriptors (zero rows excluded) into
/// `vocab_size` visual words. Throws InvalidArgument when fewer nonzero
/// descriptors than clusters remain.
Vocabulary build_vocabulary(const Matrix& descriptors, std::size_t vocab_size, Rng& rng,
                            std::size_t max_iter = 100);

} // namespace mdsfeat
