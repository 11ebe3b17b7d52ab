#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/kmeans.hpp"
#include "mdsfeat/matrix.hpp"
#include "mdsfeat/rng.hpp"
#include "mdsfeat/sym_eigen.hpp"
#include "support/test_helpers.hpp"

using namespace mdsfeat;
using test::random_symmetric;

namespace {

Matrix reconstruct(const SymEigen& eig) {
  const std::size_t n = eig.eigenvectors.rows();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += eig.eigenvectors(i, k) * eig.eigenvalues[k] * eig.eigenvectors(j, k);
      out(i, j) = s;
    }
  return out;
}

double reconstruction_error(const Matrix& a, const SymEigen& eig) {
  const Matrix r = reconstruct(eig);
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.data()[i] - r.data()[i];
    diff += d * d;
  }
  return std::sqrt(diff) / std::max(a.frobenius_norm(), 1e-300);
}

} // namespace

TEST_CASE("sym_eigen identity") {
  const SymEigen eig = sym_eigen(Matrix::identity(3));
  for (double v : eig.eigenvalues) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("sym_eigen diagonal") {
  Matrix a(2, 2);
  a(0, 0) = 5.0;
  a(1, 1) = 2.0;
  const SymEigen eig = sym_eigen(a);
  CHECK(eig.eigenvalues[0] == doctest::Approx(5.0));
  CHECK(eig.eigenvalues[1] == doctest::Approx(2.0));
  // axis-aligned eigenvectors up to sign
  CHECK(std::abs(eig.eigenvectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(eig.eigenvectors(1, 1)) == doctest::Approx(1.0));
  CHECK(eig.eigenvectors(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("sym_eigen positive semidefinite product") {
  Rng rng(7);
  const Matrix b = test::random_matrix(6, 6, rng);
  const Matrix a = b.transposed() * b;
  const SymEigen eig = sym_eigen(a);
  for (double v : eig.eigenvalues) CHECK(v >= -1e-10);
  CHECK(reconstruction_error(a, eig) < 1e-6);

  // A v = lambda v per pair
  for (std::size_t k = 0; k < 6; ++k) {
    std::vector<double> v(6), av(6, 0.0);
    for (std::size_t i = 0; i < 6; ++i) v[i] = eig.eigenvectors(i, k);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) av[i] += a(i, j) * v[j];
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(av[i] == doctest::Approx(eig.eigenvalues[k] * v[i]).epsilon(1e-6));
  }
}

TEST_CASE("sym_eigen reconstruction and orthonormality up to 50x50") {
  Rng rng(11);
  for (const std::size_t n : {std::size_t{2}, std::size_t{5}, std::size_t{17}, std::size_t{50}}) {
    const Matrix a = random_symmetric(n, rng);
    const SymEigen eig = sym_eigen(a);
    CHECK(reconstruction_error(a, eig) < 1e-6);
    for (std::size_t c1 = 0; c1 < n; ++c1) {
      for (std::size_t c2 = c1; c2 < n; ++c2) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += eig.eigenvectors(i, c1) * eig.eigenvectors(i, c2);
        CHECK(dot == doctest::Approx(c1 == c2 ? 1.0 : 0.0).epsilon(1e-8));
      }
    }
    // descending order
    CHECK(std::is_sorted(eig.eigenvalues.rbegin(), eig.eigenvalues.rend()));
  }
}

TEST_CASE("sym_eigen rejects bad input") {
  CHECK_THROWS_AS(sym_eigen(Matrix(2, 3)), DimensionError);
  Matrix asym(2, 2);
  asym(0, 1) = 1.0;
  asym(1, 0) = 0.5;
  CHECK_THROWS_AS(sym_eigen(asym), DimensionError);
}

TEST_CASE("kmeans recovers two well-separated clusters") {
  Rng data_rng(3);
  Matrix pts(40, 2);
  for (std::size_t i = 0; i < 20; ++i) {
    pts(i, 0) = data_rng.uniform(-0.5, 0.5);
    pts(i, 1) = data_rng.uniform(-0.5, 0.5);
    pts(20 + i, 0) = 10.0 + data_rng.uniform(-0.5, 0.5);
    pts(20 + i, 1) = 10.0 + data_rng.uniform(-0.5, 0.5);
  }
  Rng rng(5);
  const KmeansResult km = kmeans(pts, 2, rng);

  // exact means per half, computed independently
  double mean_a[2] = {0, 0}, mean_b[2] = {0, 0};
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      mean_a[j] += pts(i, j) / 20.0;
      mean_b[j] += pts(20 + i, j) / 20.0;
    }
  const bool a_first = km.centroids(0, 0) < 5.0;
  const std::size_t ca = a_first ? 0 : 1, cb = a_first ? 1 : 0;
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(km.centroids(ca, j) == doctest::Approx(mean_a[j]).epsilon(1e-9));
    CHECK(km.centroids(cb, j) == doctest::Approx(mean_b[j]).epsilon(1e-9));
  }
  for (std::size_t i = 0; i < 40; ++i) CHECK(km.assignments[i] == (i < 20 ? ca : cb));
}

TEST_CASE("kmeans degenerate cases") {
  Rng rng(1);
  Matrix pts(4, 2);
  pts(0, 0) = 0;
  pts(1, 0) = 1;
  pts(2, 0) = 5;
  pts(3, 0) = 9;

  SUBCASE("n == k gives zero objective") {
    Rng r(2);
    const KmeansResult km = kmeans(pts, 4, r);
    CHECK(km.wcss_history.back() == doctest::Approx(0.0));
  }
  SUBCASE("k == 1 gives the global mean") {
    Rng r(2);
    const KmeansResult km = kmeans(pts, 1, r);
    CHECK(km.centroids(0, 0) == doctest::Approx(3.75));
    CHECK(km.centroids(0, 1) == doctest::Approx(0.0));
  }
  SUBCASE("k > n is rejected") {
    CHECK_THROWS_AS(kmeans(pts, 5, rng), InvalidArgument);
    CHECK_THROWS_AS(kmeans(pts, 0, rng), InvalidArgument);
  }
}

TEST_CASE("kmeans objective is monotone non-increasing") {
  Rng data_rng(17);
  const Matrix pts = test::random_matrix(120, 3, data_rng);
  Rng rng(23);
  const KmeansResult km = kmeans(pts, 7, rng);
  for (std::size_t i = 1; i < km.wcss_history.size(); ++i)
    CHECK(km.wcss_history[i] <= km.wcss_history[i - 1] * (1.0 + 1e-12) + 1e-15);
}

TEST_CASE("kmeans result is reproducible for a fixed seed") {
  Rng data_rng(29);
  const Matrix pts = test::random_matrix(60, 4, data_rng);
  Rng r1(4), r2(4);
  const KmeansResult a = kmeans(pts, 5, r1);
  const KmeansResult b = kmeans(pts, 5, r2);
  CHECK(a.centroids == b.centroids);
  CHECK(a.assignments == b.assignments);
}

TEST_CASE("rng stream is stable across runs") {
  Rng a(42), b(42);
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(43);
  CHECK(Rng(42).next_u64() != c.next_u64());
}

TEST_CASE("random_permutation") {
  SUBCASE("single element") {
    Rng rng(0);
    CHECK(random_permutation(1, rng) == std::vector<std::size_t>{0});
  }
  SUBCASE("deterministic for a fixed seed") {
    Rng r1(99), r2(99);
    CHECK(random_permutation(5, r1) == random_permutation(5, r2));
  }
  SUBCASE("bijection on 0..n-1") {
    Rng rng(123);
    auto p = random_permutation(1000, rng);
    std::sort(p.begin(), p.end());
    std::vector<std::size_t> expected(1000);
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    CHECK(p == expected);
  }
  SUBCASE("n = 0 rejected") {
    Rng rng(0);
    CHECK_THROWS_AS(random_permutation(0, rng), InvalidArgument);
  }
}
