#include "mdsfeat/vocabulary.hpp"

#include <limits>

#include "mdsfeat/csv.hpp"
#include "mdsfeat/errors.hpp"
#include "mdsfeat/kmeans.hpp"

namespace mdsfeat {

std::size_t Vocabulary::assign(std::span<const double> descriptor) const {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    const double d = squared_euclidean(centroids.row(c), descriptor);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

void Vocabulary::save_csv(const std::filesystem::path& path) const {
  write_csv(path, centroids);
}

Vocabulary Vocabulary::load_csv(const std::filesystem::path& path) {
  CsvTable table = read_csv(path, /*expect_header=*/false);
  if (table.values.rows() == 0) throw DataError("Vocabulary::load_csv: empty file");
  return Vocabulary{std::move(table.values)};
}

Vocabulary build_vocabulary(const Matrix& descriptors, std::size_t vocab_size, Rng& rng,
                            std::size_t max_iter) {
  if (vocab_size < 1) throw InvalidArgument("build_vocabulary: vocabulary size must be positive");

  // drop zero rows (flat patches carry no gradient information)
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < descriptors.rows(); ++i) {
    bool nonzero = false;
    for (const double v : descriptors.row(i)) {
      if (v != 0.0) {
        nonzero = true;
        break;
      }
    }
    if (nonzero) keep.push_back(i);
  }
  if (keep.size() < vocab_size) {
    throw InvalidArgument("build_vocabulary: " + std::to_string(keep.size()) +
                          " usable descriptors for " + std::to_string(vocab_size) + " words");
  }

  Matrix pool(keep.size(), descriptors.cols());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < descriptors.cols(); ++j) pool(i, j) = descriptors(keep[i], j);

  KmeansResult km = kmeans(pool, vocab_size, rng, max_iter);
  return Vocabulary{std::move(km.centroids)};
}

} // namespace mdsfeat
