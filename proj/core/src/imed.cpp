#include "mdsfeat/imed.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/sym_eigen.hpp"

namespace mdsfeat {

namespace {

void require_same_size(const GrayImage& a, const GrayImage& b, const char* who) {
  if (!a.same_size(b)) {
    throw DimensionError(std::string(who) + ": image sizes differ (" +
                         std::to_string(a.height) + "x" + std::to_string(a.width) + " vs " +
                         std::to_string(b.height) + "x" + std::to_string(b.width) + ")");
  }
}

void require_valid_sigma(const ImedParams& p) {
  if (!(p.sigma > 0.0)) throw InvalidArgument("imed: sigma must be positive");
}

// 1-D Gaussian factor: entries exp(-(i-j)^2 / 2 sigma^2) / sqrt(2 pi sigma^2)
Matrix gaussian_factor(std::size_t n, double sigma) {
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * sigma * sigma);
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double t = static_cast<double>(i) - static_cast<double>(j);
      g(i, j) = g(j, i) = norm * std::exp(-t * t / (2.0 * sigma * sigma));
    }
  }
  return g;
}

Matrix psd_sqrt(const Matrix& g, const char* who) {
  const SymEigen eig = sym_eigen(g);
  const double lmax = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  const double lmin = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  if (lmin < -1e-12 * std::max(1.0, lmax)) {
    throw NumericalError(std::string(who) + ": weight matrix is not positive semidefinite");
  }
  return spectral_sqrt(eig, 0.0);
}

struct KernelFactors {
  Matrix row;       // height x height Gaussian factor
  Matrix col;       // width x width
  Matrix row_sqrt;  // PSD square roots
  Matrix col_sqrt;
};

// factors are reused across calls; one entry per (h, w, sigma)
const KernelFactors& factors_for(std::size_t h, std::size_t w, double sigma) {
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, std::size_t, double>, KernelFactors> cache;
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.try_emplace({h, w, sigma});
  if (inserted) {
    it->second.row = gaussian_factor(h, sigma);
    it->second.col = gaussian_factor(w, sigma);
    it->second.row_sqrt = psd_sqrt(it->second.row, "standardizing_transform");
    it->second.col_sqrt = psd_sqrt(it->second.col, "standardizing_transform");
  }
  return it->second;
}

// Y = R * X * C for an h x w image X
GrayImage sandwich(const GrayImage& x, const Matrix& r, const Matrix& c) {
  const std::size_t h = x.height, w = x.width;
  Matrix tmp(h, w);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t k = 0; k < h; ++k) {
      const double rik = r(i, k);
      if (rik == 0.0) continue;
      for (std::size_t j = 0; j < w; ++j) tmp(i, j) += rik * x.at(k, j);
    }
  }
  GrayImage y(h, w);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < w; ++k) s += tmp(i, k) * c(k, j);
      y.at(i, j) = s;
    }
  }
  return y;
}

} // namespace

double imed(const GrayImage& a, const GrayImage& b, const ImedParams& p) {
  require_same_size(a, b, "imed");
  require_valid_sigma(p);
  const auto& f = factors_for(a.height, a.width, p.sigma);

  GrayImage z(a.height, a.width);
  for (std::size_t i = 0; i < z.pixels.size(); ++i) z.pixels[i] = a.pixels[i] - b.pixels[i];

  // z^T (Gr kron Gc) z = <Z, Gr Z Gc>
  const GrayImage gz = sandwich(z, f.row, f.col);
  double q = 0.0;
  for (std::size_t i = 0; i < z.pixels.size(); ++i) q += z.pixels[i] * gz.pixels[i];

  double scale = 0.0;
  for (double v : z.pixels) scale += v * v;
  if (q < -1e-9 * std::max(scale, 1.0))
    throw NumericalError("imed: quadratic form came out negative");
  return std::sqrt(std::max(q, 0.0));
}

GrayImage standardizing_transform(const GrayImage& img, const ImedParams& p) {
  require_valid_sigma(p);
  const auto& f = factors_for(img.height, img.width, p.sigma);
  return sandwich(img, f.row_sqrt, f.col_sqrt);
}

GrayImage standardizing_transform_approx(const GrayImage& img, const ImedParams& p) {
  require_valid_sigma(p);
  const double s = p.sigma / std::numbers::sqrt2;
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * p.sigma));
  std::vector<double> kernel(2 * radius + 1);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * s * s);
  for (std::ptrdiff_t t = -radius; t <= radius; ++t)
    kernel[t + radius] = norm * std::exp(-static_cast<double>(t * t) / (2.0 * s * s));

  const auto h = static_cast<std::ptrdiff_t>(img.height);
  const auto w = static_cast<std::ptrdiff_t>(img.width);
  GrayImage rows(img.height, img.width);
  for (std::ptrdiff_t r = 0; r < h; ++r) {
    for (std::ptrdiff_t c = 0; c < w; ++c) {
      double s1 = 0.0;
      for (std::ptrdiff_t t = -radius; t <= radius; ++t) {
        const std::ptrdiff_t cc = c + t;
        if (cc < 0 || cc >= w) continue; // zero padded
        s1 += kernel[t + radius] * img.at(r, cc);
      }
      rows.at(r, c) = s1;
    }
  }
  GrayImage out(img.height, img.width);
  for (std::ptrdiff_t r = 0; r < h; ++r) {
    for (std::ptrdiff_t c = 0; c < w; ++c) {
      double s1 = 0.0;
      for (std::ptrdiff_t t = -radius; t <= radius; ++t) {
        const std::ptrdiff_t rr = r + t;
        if (rr < 0 || rr >= h) continue;
        s1 += kernel[t + radius] * rows.at(rr, c);
      }
      out.at(r, c) = s1;
    }
  }
  return out;
}

Matrix imed_weight_matrix(std::size_t height, std::size_t width, const ImedParams& p) {
  require_valid_sigma(p);
  const std::size_t n = height * width;
  if (n > 4096) throw InvalidArgument("imed_weight_matrix: explicit G limited to 4096 pixels");
  const double norm = 1.0 / (2.0 * std::numbers::pi * p.sigma * p.sigma);
  Matrix g(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const double ra = static_cast<double>(a / width), ca = static_cast<double>(a % width);
    for (std::size_t b = a; b < n; ++b) {
      const double rb = static_cast<double>(b / width), cb = static_cast<double>(b % width);
      const double d2 = (ra - rb) * (ra - rb) + (ca - cb) * (ca - cb);
      g(a, b) = g(b, a) = norm * std::exp(-d2 / (2.0 * p.sigma * p.sigma));
    }
  }
  return g;
}

double imed_with_weights(const GrayImage& a, const GrayImage& b, const Matrix& g) {
  require_same_size(a, b, "imed_with_weights");
  if (g.rows() != a.pixel_count() || g.cols() != a.pixel_count())
    throw DimensionError("imed_with_weights: weight matrix does not match pixel count");
  std::vector<double> z(a.pixel_count());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = a.pixels[i] - b.pixels[i];
  const auto gz = matvec(g, z);
  double q = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    q += z[i] * gz[i];
    scale += z[i] * z[i];
  }
  if (q < -1e-9 * std::max(scale, 1.0))
    throw NumericalError("imed_with_weights: quadratic form came out negative");
  return std::sqrt(std::max(q, 0.0));
}

GrayImage standardizing_transform_with_weights(const GrayImage& img, const Matrix& g) {
  if (g.rows() != img.pixel_count() || g.cols() != img.pixel_count())
    throw DimensionError("standardizing_transform_with_weights: size mismatch");
  const Matrix root = psd_sqrt(g, "standardizing_transform_with_weights");
  const auto y = matvec(root, img.pixels);
  GrayImage out(img.height, img.width);
  out.pixels = y;
  return out;
}

} // namespace mdsfeat
