#include "mdsfeat/pyramid.hpp"

#include <cmath>
#include <string>

#include "mdsfeat/csv.hpp"
#include "mdsfeat/errors.hpp"

namespace mdsfeat {

std::size_t PyramidVector::expected_length(std::size_t vocab_size, std::size_t levels) {
  std::size_t cells = 0, per_level = 1;
  for (std::size_t l = 0; l <= levels; ++l) {
    cells += per_level;
    per_level *= 4;
  }
  return vocab_size * cells;
}

PyramidVector pyramid_vector(const std::vector<LocalDescriptor>& descs, std::size_t img_height,
                             std::size_t img_width, const Vocabulary& vocab,
                             std::size_t levels) {
  if (img_height == 0 || img_width == 0)
    throw InvalidArgument("pyramid_vector: empty image geometry");
  const std::size_t m = vocab.size();

  PyramidVector pv;
  pv.levels = levels;
  pv.vocab_size = m;
  pv.descriptor_count = descs.size();
  pv.weighted_histogram.assign(PyramidVector::expected_length(m, levels), 0.0);
  if (descs.empty()) {
    pv.empty_input = true;
    return pv;
  }

  // visual word per descriptor, then one histogram entry per level
  std::vector<std::size_t> words(descs.size());
  for (std::size_t i = 0; i < descs.size(); ++i) words[i] = vocab.assign(descs[i].vector);

  const double inv_count = 1.0 / static_cast<double>(descs.size());
  std::size_t level_offset = 0;
  std::size_t grid = 1;
  for (std::size_t l = 0; l <= levels; ++l) {
    const double weight =
        l == 0 ? 1.0 / static_cast<double>(1ull << levels)
               : 1.0 / static_cast<double>(1ull << (levels - l + 1));
    for (std::size_t i = 0; i < descs.size(); ++i) {
      const auto row_cell = std::min(
          static_cast<std::size_t>(descs[i].row * static_cast<double>(grid) /
                                   static_cast<double>(img_height)),
          grid - 1);
      const auto col_cell = std::min(
          static_cast<std::size_t>(descs[i].col * static_cast<double>(grid) /
                                   static_cast<double>(img_width)),
          grid - 1);
      const std::size_t cell = row_cell * grid + col_cell;
      pv.weighted_histogram[level_offset + cell * m + words[i]] += weight * inv_count;
    }
    level_offset += grid * grid * m;
    grid *= 2;
  }
  return pv;
}

double pyramid_match_similarity(const PyramidVector& a, const PyramidVector& b) {
  if (a.vocab_size != b.vocab_size || a.levels != b.levels) {
    throw DimensionError("pyramid_match_similarity: parameter mismatch (M " +
                         std::to_string(a.vocab_size) + " vs " + std::to_string(b.vocab_size) +
                         ", L " + std::to_string(a.levels) + " vs " + std::to_string(b.levels) +
                         ")");
  }
  const bool ea = a.descriptor_count == 0;
  const bool eb = b.descriptor_count == 0;
  if (ea || eb) return ea && eb ? 1.0 : 0.0;

  double iab = 0.0, iaa = 0.0, ibb = 0.0;
  for (std::size_t i = 0; i < a.weighted_histogram.size(); ++i) {
    const double va = a.weighted_histogram[i];
    const double vb = b.weighted_histogram[i];
    iab += std::min(va, vb);
    iaa += va;
    ibb += vb;
  }
  const double norm = std::sqrt(iaa * ibb);
  if (norm <= 0.0) return 0.0;
  return std::min(iab / norm, 1.0);
}

void save_pyramid_batch(const std::filesystem::path& path,
                        const std::vector<PyramidVector>& batch) {
  if (batch.empty()) throw InvalidArgument("save_pyramid_batch: empty batch");
  const std::size_t len = batch.front().weighted_histogram.size();
  Matrix m(batch.size(), len);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch[i].weighted_histogram.size() != len)
      throw DimensionError("save_pyramid_batch: inconsistent vector lengths");
    for (std::size_t j = 0; j < len; ++j) m(i, j) = batch[i].weighted_histogram[j];
  }
  write_csv(path, m);
}

} // namespace mdsfeat
