#include "mdsfeat/dataset.hpp"

#include <algorithm>
#include <map>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/hash.hpp"
#include "mdsfeat/image_io.hpp"

namespace mdsfeat {

namespace {

std::vector<std::filesystem::path> sorted_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_supported_image(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

LabeledImageSet load_uiuc(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> files;
  for (const auto& dir : {root, root / "TrainImages"}) {
    if (!std::filesystem::is_directory(dir)) continue;
    for (auto& f : sorted_files(dir)) {
      const std::string stem = f.filename().string();
      if (stem.rfind("pos-", 0) == 0 || stem.rfind("neg-", 0) == 0) files.push_back(f);
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw DataError("load_image_dataset: no pos-/neg- images under " + root.string());

  LabeledImageSet set;
  set.class_names = {"non-car", "car"};
  for (const auto& f : files) {
    GrayImage img = read_image(f);
    if (img.height != 40 || img.width != 100) {
      throw DataError("load_image_dataset: " + f.string() + " is " +
                      std::to_string(img.height) + "x" + std::to_string(img.width) +
                      ", UIUC layout requires 40x100");
    }
    set.labels.push_back(f.filename().string().rfind("pos-", 0) == 0 ? 1 : -1);
    set.images.push_back(std::move(img));
    set.source_paths.push_back(f);
  }
  return set;
}

LabeledImageSet load_class_dirs(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> class_dirs;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  }
  std::sort(class_dirs.begin(), class_dirs.end());
  if (class_dirs.empty())
    throw DataError("load_image_dataset: no class directories under " + root.string());

  LabeledImageSet set;
  int class_id = 0;
  for (const auto& dir : class_dirs) {
    set.class_names.push_back(dir.filename().string());
    for (const auto& f : sorted_files(dir)) {
      set.images.push_back(read_image(f));
      set.labels.push_back(class_id);
      set.source_paths.push_back(f);
    }
    ++class_id;
  }
  if (set.images.empty())
    throw DataError("load_image_dataset: class directories under " + root.string() +
                    " contain no images");
  return set;
}

} // namespace

LabeledImageSet load_image_dataset(const std::filesystem::path& root, DatasetLayout layout) {
  if (!std::filesystem::is_directory(root))
    throw DataError("load_image_dataset: " + root.string() + " is not a directory");
  switch (layout) {
    case DatasetLayout::uiuc:
      return load_uiuc(root);
    case DatasetLayout::class_per_directory:
      return load_class_dirs(root);
  }
  throw InvalidArgument("load_image_dataset: unknown layout");
}

std::uint64_t dataset_content_hash(const LabeledImageSet& set) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& img = set.images[i];
    h = fnv1a({reinterpret_cast<const char*>(img.pixels.data()),
               img.pixels.size() * sizeof(double)}, h);
    const int label = set.labels[i];
    h = fnv1a({reinterpret_cast<const char*>(&label), sizeof(label)}, h);
  }
  return h;
}

} // namespace mdsfeat
