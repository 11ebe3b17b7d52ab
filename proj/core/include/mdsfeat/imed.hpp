#pragma once

#include "mdsfeat/gray_image.hpp"
#include "mdsfeat/matrix.hpp"

namespace mdsfeat {

/// Width of the Gaussian weighting function f(t) = exp(-t^2 / 2 sigma^2) /
/// (2 pi sigma^2) between pixel locations.
struct ImedParams {
  double sigma = 1.0;
};

/// IMage Euclidean Distance: sqrt(z^T G z) for the flattened difference z,
/// where G holds Gaussian weights of inter-pixel distances. Because the
/// Gaussian separates over rows and columns, G is the Kronecker product of a
/// height-sized and a width-sized factor; the quadratic form and the exact
/// square root are evaluated through those factors, which is identical to
/// the explicit G up to roundoff and keeps 40x100 images cheap.
double imed(const GrayImage& a, const GrayImage& b, const ImedParams& p = {});

/// Applies G^{1/2} (exact, via eigendecomposition of the row/column factors).
/// euclidean_distance of two transformed images reproduces imed.
GrayImage standardizing_transform(const GrayImage& img, const ImedParams& p = {});

/// Fast approximate standardizing transform: separable convolution with a
/// truncated normalized Gaussian of width sigma/sqrt(2) (radius 3*sigma,
/// zero padded). Interior pixels match the exact transform to a percent or
/// two; edges differ more.
GrayImage standardizing_transform_approx(const GrayImage& img, const ImedParams& p = {});

/// Explicit pixel-pair weight matrix G, (h*w) x (h*w); the test oracle path.
/// Throws InvalidArgument above 4096 pixels.
Matrix imed_weight_matrix(std::size_t height, std::size_t width, const ImedParams& p = {});

/// Quadratic-form distance sqrt(z^T g z) with an explicit weight matrix;
/// throws NumericalError when the form is materially negative.
double imed_with_weights(const GrayImage& a, const GrayImage& b, const Matrix& g);

/// G^{1/2} applied through an explicit symmetric PSD weight matrix.
GrayImage standardizing_transform_with_weights(const GrayImage& img, const Matrix& g);

} // namespace mdsfeat
