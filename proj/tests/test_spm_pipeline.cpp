#include <doctest.h>

#include <cmath>

#include "mdsfeat/descriptors.hpp"
#include "mdsfeat/errors.hpp"
#include "mdsfeat/pyramid.hpp"
#include "mdsfeat/rng.hpp"
#include "mdsfeat/vocabulary.hpp"
#include "support/test_helpers.hpp"

using namespace mdsfeat;

namespace {

GrayImage vertical_edge_image(std::size_t h, std::size_t w) {
  GrayImage img(h, w);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = w / 2; c < w; ++c) img.at(r, c) = 1.0;
  return img;
}

GrayImage horizontal_edge_image(std::size_t h, std::size_t w) {
  GrayImage img(h, w);
  for (std::size_t r = h / 2; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) img.at(r, c) = 1.0;
  return img;
}

Vocabulary vocabulary_of(std::size_t m, Rng& rng) {
  Matrix centroids(m, kDescriptorDim);
  for (auto& v : centroids.data()) v = rng.next_double();
  return Vocabulary{std::move(centroids)};
}

} // namespace

TEST_CASE("dense descriptors on a flat image are zero vectors") {
  const GrayImage img(24, 24, 0.5);
  const auto descs = dense_descriptors(img, 8, 16);
  REQUIRE(!descs.empty());
  for (const auto& d : descs)
    for (const double v : d.vector) CHECK(v == 0.0);
}

TEST_CASE("dense descriptor grid arithmetic") {
  const GrayImage img(40, 100, 0.0);
  const auto descs = dense_descriptors(img, 8, 16);
  CHECK(descs.size() == 44); // 4 rows x 11 columns of patches
  // positions stay inside the image
  for (const auto& d : descs) {
    CHECK(d.row >= 8.0);
    CHECK(d.row <= 32.0);
    CHECK(d.col >= 8.0);
    CHECK(d.col <= 92.0);
  }
}

TEST_CASE("descriptor norms are unit or zero, entries clipped") {
  Rng rng(3);
  GrayImage img(32, 32);
  for (auto& p : img.pixels) p = rng.next_double();
  const auto descs = dense_descriptors(img, 8, 16);
  for (const auto& d : descs) {
    double norm = 0.0;
    for (const double v : d.vector) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-9);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    CHECK((std::abs(norm - 1.0) < 1e-6 || norm == 0.0));
  }
}

TEST_CASE("vertical edge concentrates energy in horizontal-gradient bins") {
  const GrayImage img = vertical_edge_image(32, 32);
  const auto descs = dense_descriptors(img, 8, 16);
  // expected bin for a pure +x gradient
  const std::size_t expected = orientation_bin(1.0, 0.0);
  double on_bin = 0.0, off_bin = 0.0;
  for (const auto& d : descs) {
    for (std::size_t cell = 0; cell < 16; ++cell)
      for (std::size_t b = 0; b < 8; ++b)
        (b == expected ? on_bin : off_bin) += d.vector[cell * 8 + b];
  }
  CHECK(on_bin > 0.0);
  CHECK(off_bin == doctest::Approx(0.0));
}

TEST_CASE("dense_descriptors rejects oversized patches") {
  CHECK_THROWS_AS(dense_descriptors(GrayImage(10, 40, 0.0), 8, 16), InvalidArgument);
}

TEST_CASE("build_vocabulary basics") {
  Rng data_rng(5);
  SUBCASE("single word equals the mean descriptor") {
    Matrix descs(10, kDescriptorDim);
    for (auto& v : descs.data()) v = data_rng.next_double();
    Rng rng(1);
    const Vocabulary vocab = build_vocabulary(descs, 1, rng);
    for (std::size_t j = 0; j < kDescriptorDim; ++j) {
      double mean = 0.0;
      for (std::size_t i = 0; i < 10; ++i) mean += descs(i, j);
      CHECK(vocab.centroids(0, j) == doctest::Approx(mean / 10.0));
    }
  }
  SUBCASE("zero descriptors are excluded") {
    Matrix descs(4, kDescriptorDim); // all zero
    descs(0, 0) = 1.0;
    Rng rng(1);
    CHECK_THROWS_AS(build_vocabulary(descs, 2, rng), InvalidArgument);
    const Vocabulary vocab = build_vocabulary(descs, 1, rng);
    CHECK(vocab.centroids(0, 0) == doctest::Approx(1.0));
  }
  SUBCASE("too few descriptors rejected") {
    Matrix descs(3, kDescriptorDim, 0.5);
    Rng rng(1);
    CHECK_THROWS_AS(build_vocabulary(descs, 4, rng), InvalidArgument);
  }
}

TEST_CASE("vocabulary separates two orthogonal stripe families") {
  // periodic stripes aligned to the patch grid: every patch in a family
  // sees the same pattern, so the families form two tight clusters
  auto stripes = [](std::size_t h, std::size_t w, bool vertical) {
    GrayImage img(h, w);
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c)
        img.at(r, c) = (((vertical ? c : r) / 4) % 2) ? 1.0 : 0.0;
    return img;
  };
  std::vector<LocalDescriptor> all;
  std::vector<int> family;
  for (int i = 0; i < 6; ++i) {
    const std::size_t size = 32 + 8 * static_cast<std::size_t>(i);
    for (const auto& d : dense_descriptors(stripes(size, size, true), 8, 16)) {
      all.push_back(d);
      family.push_back(0);
    }
    for (const auto& d : dense_descriptors(stripes(size, size, false), 8, 16)) {
      all.push_back(d);
      family.push_back(1);
    }
  }
  REQUIRE(all.size() > 20);

  Rng vocab_rng(11);
  const Vocabulary vocab = build_vocabulary(descriptor_matrix(all), 2, vocab_rng);

  // assignment purity: each family maps to one dominant word
  std::size_t counts[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < all.size(); ++i)
    counts[family[i]][vocab.assign(all[i].vector)]++;
  const std::size_t agree = counts[0][0] + counts[1][1];
  const std::size_t cross = counts[0][1] + counts[1][0];
  const double purity =
      static_cast<double>(std::max(agree, cross)) / static_cast<double>(all.size());
  CHECK(purity > 0.95);
}

TEST_CASE("pyramid vector length formula") {
  Rng rng(13);
  CHECK(PyramidVector::expected_length(200, 2) == 4200);
  for (const std::size_t m : {std::size_t{1}, std::size_t{10}, std::size_t{200}}) {
    for (std::size_t levels = 0; levels <= 3; ++levels) {
      const Vocabulary vocab = vocabulary_of(m, rng);
      const GrayImage img(20, 20, 0.0);
      const auto pv = pyramid_vector(dense_descriptors(img, 4, 8), 20, 20, vocab, levels);
      std::size_t expected = 0, cells = 1;
      for (std::size_t l = 0; l <= levels; ++l) {
        expected += m * cells;
        cells *= 4;
      }
      CHECK(pv.weighted_histogram.size() == expected);
      CHECK(pv.weighted_histogram.size() ==
            PyramidVector::expected_length(m, levels));
    }
  }
}

TEST_CASE("level zero is a plain normalized bag of words") {
  Rng rng(17);
  const Vocabulary vocab = vocabulary_of(5, rng);
  GrayImage img(24, 24);
  for (auto& p : img.pixels) p = rng.next_double();
  const auto descs = dense_descriptors(img, 8, 16);
  const auto pv = pyramid_vector(descs, 24, 24, vocab, 0);
  double sum = 0.0;
  for (const double v : pv.weighted_histogram) sum += v;
  CHECK(sum == doctest::Approx(1.0)); // weight 1/2^0 = 1, counts normalized
}

TEST_CASE("single descriptor lights one cell per level") {
  Rng rng(19);
  const Vocabulary vocab = vocabulary_of(1, rng);
  std::vector<LocalDescriptor> descs(1);
  descs[0].row = 10.0; // center of a 20x20 image, upper-left level-1 cell...
  descs[0].col = 4.0;  // ...for the column, row lands in the second half
  descs[0].vector.fill(0.1);

  const auto pv = pyramid_vector(descs, 20, 20, vocab, 1);
  REQUIRE(pv.weighted_histogram.size() == 5);
  CHECK(pv.weighted_histogram[0] == doctest::Approx(0.5)); // level 0: w = 1/2
  std::size_t nonzero = 0;
  for (std::size_t i = 1; i < 5; ++i)
    if (pv.weighted_histogram[i] > 0.0) {
      ++nonzero;
      CHECK(pv.weighted_histogram[i] == doctest::Approx(0.5));
    }
  CHECK(nonzero == 1);
}

TEST_CASE("empty descriptor list yields a flagged zero vector") {
  Rng rng(23);
  const Vocabulary vocab = vocabulary_of(3, rng);
  const auto pv = pyramid_vector({}, 16, 16, vocab, 2);
  CHECK(pv.empty_input);
  CHECK(pv.descriptor_count == 0);
  for (const double v : pv.weighted_histogram) CHECK(v == 0.0);
}

TEST_CASE("per-level unweighted histogram mass is one") {
  Rng rng(29);
  const Vocabulary vocab = vocabulary_of(4, rng);
  GrayImage img(32, 32);
  for (auto& p : img.pixels) p = rng.next_double();
  const auto descs = dense_descriptors(img, 8, 16);
  const std::size_t levels = 2;
  const auto pv = pyramid_vector(descs, 32, 32, vocab, levels);

  std::size_t offset = 0, grid = 1;
  for (std::size_t l = 0; l <= levels; ++l) {
    const double weight = l == 0 ? 1.0 / 4.0 : 1.0 / static_cast<double>(1 << (levels - l + 1));
    double sum = 0.0;
    for (std::size_t i = 0; i < grid * grid * 4; ++i) sum += pv.weighted_histogram[offset + i];
    CHECK(sum / weight == doctest::Approx(1.0));
    offset += grid * grid * 4;
    grid *= 2;
  }
}

TEST_CASE("pyramid similarity properties") {
  Rng rng(31);
  const Vocabulary vocab = vocabulary_of(6, rng);
  GrayImage a(24, 24), b(24, 24);
  for (auto& p : a.pixels) p = rng.next_double();
  for (auto& p : b.pixels) p = rng.next_double();
  const auto pa = pyramid_vector(dense_descriptors(a, 8, 16), 24, 24, vocab, 2);
  const auto pb = pyramid_vector(dense_descriptors(b, 8, 16), 24, 24, vocab, 2);

  CHECK(pyramid_match_similarity(pa, pa) == doctest::Approx(1.0));
  const double kab = pyramid_match_similarity(pa, pb);
  CHECK(kab == doctest::Approx(pyramid_match_similarity(pb, pa)));
  CHECK(kab >= 0.0);
  CHECK(kab <= 1.0);
}

TEST_CASE("disjoint word support gives zero similarity") {
  PyramidVector a, b;
  a.levels = b.levels = 0;
  a.vocab_size = b.vocab_size = 2;
  a.descriptor_count = b.descriptor_count = 4;
  a.weighted_histogram = {1.0, 0.0};
  b.weighted_histogram = {0.0, 1.0};
  CHECK(pyramid_match_similarity(a, b) == doctest::Approx(0.0));
}

TEST_CASE("empty pyramid conventions") {
  Rng rng(37);
  const Vocabulary vocab = vocabulary_of(2, rng);
  const auto empty = pyramid_vector({}, 8, 8, vocab, 1);
  std::vector<LocalDescriptor> one(1);
  one[0].row = one[0].col = 4.0;
  one[0].vector.fill(0.3);
  const auto filled = pyramid_vector(one, 8, 8, vocab, 1);
  CHECK(pyramid_match_similarity(empty, empty) == doctest::Approx(1.0));
  CHECK(pyramid_match_similarity(empty, filled) == doctest::Approx(0.0));
}

TEST_CASE("adding a shared descriptor does not decrease similarity") {
  Rng rng(41);
  const Vocabulary vocab = vocabulary_of(3, rng);
  auto make = [&](std::size_t extra_word_reps) {
    std::vector<LocalDescriptor> descs;
    LocalDescriptor d0;
    d0.row = 2.0;
    d0.col = 2.0;
    d0.vector.fill(0.0);
    d0.vector[0] = 1.0;
    descs.push_back(d0);
    for (std::size_t i = 0; i < extra_word_reps; ++i) {
      LocalDescriptor shared;
      shared.row = 14.0;
      shared.col = 14.0;
      shared.vector.fill(0.0);
      shared.vector[5] = 1.0;
      descs.push_back(shared);
    }
    return descs;
  };
  auto base_a = make(0);
  auto base_b = make(0);
  // b differs in its sole descriptor's cell
  base_b[0].row = 14.0;

  const auto pa0 = pyramid_vector(base_a, 16, 16, vocab, 1);
  const auto pb0 = pyramid_vector(base_b, 16, 16, vocab, 1);
  const double before = pyramid_match_similarity(pa0, pb0);

  const auto pa1 = pyramid_vector(make(1), 16, 16, vocab, 1);
  auto bb = make(1);
  bb[0].row = 14.0;
  const auto pb1 = pyramid_vector(bb, 16, 16, vocab, 1);
  const double after = pyramid_match_similarity(pa1, pb1);
  CHECK(after >= before - 1e-12);
}

TEST_CASE("pyramid parameter mismatch is rejected") {
  PyramidVector a, b;
  a.levels = 1;
  b.levels = 2;
  a.vocab_size = b.vocab_size = 2;
  CHECK_THROWS_AS(pyramid_match_similarity(a, b), DimensionError);
}

TEST_CASE("vocabulary csv round trip") {
  test::TempDir tmp("mdsfeat-vocab");
  Rng rng(43);
  const Vocabulary vocab = vocabulary_of(4, rng);
  const auto path = tmp.path() / "vocab.csv";
  vocab.save_csv(path);
  const Vocabulary loaded = Vocabulary::load_csv(path);
  CHECK(loaded.centroids == vocab.centroids);
}
