#pragma once

#include "mdsfeat/matrix.hpp"

#include <vector>

namespace mdsfeat {

struct ZscoreStats {
  std::vector<double> means;
  std::vector<double> stds; // population (1/n); zero marks a constant column
};

/// Centers and scales columns using statistics of `train`; matrices in
/// `others` reuse the training statistics. Zero-variance columns pass
/// through centered only.
ZscoreStats zscore_fit_apply(Matrix& train, std::vector<Matrix*> others);

} // namespace mdsfeat
