#include <doctest.h>

#include <cmath>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/geodesic.hpp"
#include "mdsfeat/gray_image.hpp"
#include "mdsfeat/imed.hpp"
#include "mdsfeat/pairwise.hpp"
#include "mdsfeat/rng.hpp"
#include "mdsfeat/spm_distance.hpp"
#include "mdsfeat/sym_eigen.hpp"
#include "support/test_helpers.hpp"

using namespace mdsfeat;

namespace {

GrayImage random_image(std::size_t h, std::size_t w, Rng& rng) {
  GrayImage img(h, w);
  for (auto& p : img.pixels) p = rng.next_double();
  return img;
}

GrayImage pixel_image(std::initializer_list<double> values, std::size_t h, std::size_t w) {
  GrayImage img(h, w);
  std::size_t i = 0;
  for (const double v : values) img.pixels[i++] = v;
  return img;
}

} // namespace

TEST_CASE("euclidean_distance examples") {
  Rng rng(1);
  const GrayImage a = random_image(3, 4, rng);
  CHECK(euclidean_distance(a, a) == doctest::Approx(0.0));

  CHECK(euclidean_distance(pixel_image({0, 0}, 1, 2), pixel_image({1, 0}, 1, 2)) ==
        doctest::Approx(1.0));
  CHECK(euclidean_distance(pixel_image({0, 0, 0, 0}, 2, 2), pixel_image({1, 1, 1, 1}, 2, 2)) ==
        doctest::Approx(2.0));
  CHECK_THROWS_AS(euclidean_distance(GrayImage(2, 2), GrayImage(2, 3)), DimensionError);
}

TEST_CASE("imed of identical images is zero") {
  Rng rng(2);
  const GrayImage a = random_image(5, 7, rng);
  CHECK(imed(a, a) == doctest::Approx(0.0));
}

TEST_CASE("imed with identity weights collapses to the euclidean distance") {
  Rng rng(3);
  const GrayImage a = random_image(4, 4, rng);
  const GrayImage b = random_image(4, 4, rng);
  const Matrix identity = Matrix::identity(16);
  CHECK(imed_with_weights(a, b, identity) ==
        doctest::Approx(euclidean_distance(a, b)).epsilon(1e-12));
}

TEST_CASE("imed equals euclidean after the exact standardizing transform") {
  Rng rng(4);
  // the oracle: explicit 64x64 G and its eigen square root
  const Matrix g = imed_weight_matrix(8, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const GrayImage a = random_image(8, 8, rng);
    const GrayImage b = random_image(8, 8, rng);

    const double direct = imed(a, b);
    const double oracle = imed_with_weights(a, b, g);
    CHECK(direct == doctest::Approx(oracle).epsilon(1e-9));

    const GrayImage sta = standardizing_transform(a);
    const GrayImage stb = standardizing_transform(b);
    const double via_st = euclidean_distance(sta, stb);
    CHECK(std::abs(direct - via_st) / std::max(direct, 1e-12) < 1e-6);

    // oracle transform path agrees with the factored implementation
    const GrayImage sta_oracle = standardizing_transform_with_weights(a, g);
    for (std::size_t i = 0; i < sta.pixels.size(); ++i)
      CHECK(sta.pixels[i] == doctest::Approx(sta_oracle.pixels[i]).epsilon(1e-8));
  }
}

TEST_CASE("imed is symmetric and nonnegative") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const GrayImage a = random_image(6, 5, rng);
    const GrayImage b = random_image(6, 5, rng);
    const double ab = imed(a, b);
    CHECK(ab >= 0.0);
    CHECK(ab == doctest::Approx(imed(b, a)));
  }
  CHECK_THROWS_AS(imed(GrayImage(2, 2), GrayImage(3, 2)), DimensionError);
}

TEST_CASE("standardizing transform is linear") {
  Rng rng(6);
  const GrayImage a = random_image(5, 6, rng);
  GrayImage scaled = a;
  for (auto& p : scaled.pixels) p *= 3.5;
  const GrayImage sta = standardizing_transform(a);
  const GrayImage sts = standardizing_transform(scaled);
  for (std::size_t i = 0; i < sta.pixels.size(); ++i)
    CHECK(sts.pixels[i] == doctest::Approx(3.5 * sta.pixels[i]).epsilon(1e-10));
}

TEST_CASE("row-normalized weights preserve constant images") {
  // symmetric stochastic weights: (1-beta) I + beta/P ones
  const std::size_t p = 16;
  const double beta = 0.6;
  Matrix g(p, p, beta / static_cast<double>(p));
  for (std::size_t i = 0; i < p; ++i) g(i, i) += 1.0 - beta;

  const GrayImage constant(4, 4, 0.7);
  const GrayImage st = standardizing_transform_with_weights(constant, g);
  for (const double v : st.pixels) CHECK(v == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("approximate transform tracks the exact one away from edges") {
  Rng rng(7);
  const GrayImage a = random_image(12, 12, rng);
  const GrayImage exact = standardizing_transform(a);
  const GrayImage approx = standardizing_transform_approx(a);
  for (std::size_t r = 4; r < 8; ++r)
    for (std::size_t c = 4; c < 8; ++c)
      CHECK(approx.at(r, c) == doctest::Approx(exact.at(r, c)).epsilon(5e-2));
}

TEST_CASE("geodesic distances on a path graph") {
  Matrix pts(5, 1);
  for (std::size_t i = 0; i < 5; ++i) pts(i, 0) = static_cast<double>(i);
  const DistanceMatrix d = geodesic_distance_matrix(PointCloud{pts}, 2);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(d(i, j) == doctest::Approx(std::abs(static_cast<double>(i) -
                                                static_cast<double>(j))));
}

TEST_CASE("geodesic distances on a circle arc follow chord sums") {
  // three points on the unit circle at angles 0, 0.5, 1.0 rad; k=1 links
  // neighbors only
  Matrix pts(3, 2);
  const double angles[3] = {0.0, 0.5, 1.0};
  for (std::size_t i = 0; i < 3; ++i) {
    pts(i, 0) = std::cos(angles[i]);
    pts(i, 1) = std::sin(angles[i]);
  }
  const double chord = 2.0 * std::sin(0.25); // between adjacent points
  const DistanceMatrix d = geodesic_distance_matrix(PointCloud{pts}, 1);
  CHECK(d(0, 1) == doctest::Approx(chord).epsilon(1e-12));
  CHECK(d(1, 2) == doctest::Approx(chord).epsilon(1e-12));
  CHECK(d(0, 2) == doctest::Approx(2.0 * chord).epsilon(1e-12));
}

TEST_CASE("geodesic failure names the smallest component") {
  // two clusters far apart: k=1 cannot bridge them
  Matrix pts(5, 2);
  pts(0, 0) = 0.0;
  pts(1, 0) = 0.1;
  pts(2, 0) = 0.2;
  pts(3, 0) = 100.0;
  pts(4, 0) = 100.1;
  try {
    geodesic_distance_matrix(PointCloud{pts}, 1);
    FAIL("expected ConnectivityError");
  } catch (const ConnectivityError& e) {
    CHECK(e.smallest_component == std::vector<std::size_t>{3, 4});
    CHECK(std::string(e.what()).find("2 points") != std::string::npos);
  }
}

TEST_CASE("geodesic matrix satisfies the triangle inequality") {
  Rng rng(8);
  const Matrix pts = test::random_matrix(40, 3, rng, -1.0, 1.0);
  const DistanceMatrix d = geodesic_distance_matrix(PointCloud{pts}, 6);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j)
      for (std::size_t k = 0; k < 40; ++k)
        CHECK(d(i, j) <= d(i, k) + d(k, j) + 1e-9);
}

TEST_CASE("spm distance endpoints") {
  CHECK(spm1_distance(1.0) == doctest::Approx(0.0));
  CHECK(spm1_distance(0.0) == doctest::Approx(1.0));
  CHECK(spm2_distance(1.0, 0.001) == doctest::Approx(0.0));
  CHECK(spm2_distance(0.0, 0.001) == doctest::Approx(-std::log(0.001)).epsilon(1e-12));
}

TEST_CASE("spm2 is monotone decreasing and bounded") {
  const double eps = 0.001;
  double prev = spm2_distance(0.0, eps);
  CHECK(prev <= -std::log(eps) + 1e-12);
  for (int i = 1; i <= 100; ++i) {
    const double k = i / 100.0;
    const double v = spm2_distance(k, eps);
    CHECK(v < prev);
    CHECK(v >= 0.0);
    prev = v;
  }
}

TEST_CASE("spm distances validate input") {
  CHECK_THROWS_AS(spm1_distance(1.5), RangeError);
  CHECK_THROWS_AS(spm1_distance(-0.2), RangeError);
  CHECK_THROWS_AS(spm2_distance(0.5, 0.0), InvalidArgument);
  CHECK_THROWS_AS(spm2_distance(0.5, 1.0), InvalidArgument);
}

TEST_CASE("build_distance_matrix") {
  SUBCASE("single item") {
    const std::vector<GrayImage> items = {GrayImage(1, 1, 0.5)};
    const DistanceMatrix d = build_distance_matrix(items, euclidean_distance);
    CHECK(d.size() == 1);
    CHECK(d(0, 0) == 0.0);
  }
  SUBCASE("three collinear single-pixel images") {
    const std::vector<GrayImage> items = {GrayImage(1, 1, 0.0), GrayImage(1, 1, 0.5),
                                          GrayImage(1, 1, 1.0)};
    const DistanceMatrix d = build_distance_matrix(items, euclidean_distance);
    CHECK(d(0, 1) == doctest::Approx(0.5));
    CHECK(d(0, 2) == doctest::Approx(1.0));
    CHECK(d(1, 2) == doctest::Approx(0.5));
    CHECK(d(1, 0) == doctest::Approx(0.5));
  }
  SUBCASE("negative measure is rejected with the pair named") {
    const std::vector<int> items = {1, 2, 3};
    try {
      build_distance_matrix(items, [](int, int) { return -1.0; });
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
    }
  }
  SUBCASE("larger matrix satisfies the distance-matrix invariants") {
    Rng rng(9);
    std::vector<std::vector<double>> items(300);
    for (auto& v : items) {
      v.resize(4);
      for (auto& x : v) x = rng.next_double();
    }
    const DistanceMatrix d = build_distance_matrix(items, [](const auto& a, const auto& b) {
      return euclidean(a, b);
    });
    CHECK(d.size() == 300);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d(i, i) == 0.0);
    CHECK(d(12, 200) == doctest::Approx(euclidean(items[12], items[200])));
  }
}
