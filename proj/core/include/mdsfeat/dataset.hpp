#pragma once

#include "mdsfeat/gray_image.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace mdsfeat {

enum class DatasetLayout {
  uiuc,                // pos-*.pgm / neg-*.pgm, 40x100 enforced
  class_per_directory, // one subdirectory per class, any supported image
};

/// Images with integer class ids. For the UIUC layout car is class 1,
/// non-car is class -1; for directory layouts classes are numbered by
/// sorted directory name and `class_names` records the mapping.
struct LabeledImageSet {
  std::vector<GrayImage> images;
  std::vector<int> labels;
  std::vector<std::string> class_names;
  std::vector<std::filesystem::path> source_paths;

  std::size_t size() const { return images.size(); }
};

/// Loads a dataset in deterministic lexicographic file order; intensities in
/// [0, 1]. The UIUC layout searches the root and a TrainImages/ subdirectory
/// for pos-/neg- prefixed files and enforces the 40x100 geometry. Throws
/// DataError naming the offending file, or an empty-set error.
LabeledImageSet load_image_dataset(const std::filesystem::path& root, DatasetLayout layout);

/// Content hash over image pixels and labels, for cache keys.
std::uint64_t dataset_content_hash(const LabeledImageSet& set);

} // namespace mdsfeat
