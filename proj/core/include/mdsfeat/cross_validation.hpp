#pragma once

#include "mdsfeat/matrix.hpp"
#include "mdsfeat/metrics.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace mdsfeat {

/// Seeded class-stratified fold assignment: items of each class are
/// shuffled, then dealt round-robin, so a 550/500 split over five folds
/// lands at exactly 110/100 per fold. A pure function of (labels, folds,
/// seed), which is what lets every feature method see identical folds.
std::vector<std::size_t> stratified_folds(const std::vector<int>& labels, std::size_t folds,
                                          std::uint64_t seed);

/// Produces raw (not yet normalized) feature rows for the given train/test
/// item indices at target dimension m. The returned matrices may have fewer
/// than m columns when a method loses rank.
using FeatureExtractor = std::function<std::pair<Matrix, Matrix>(
    const std::vector<std::size_t>& train_items, const std::vector<std::size_t>& test_items,
    std::size_t m)>;

struct CrossValidationSweep {
  std::size_t m = 0;
  FoldReport report;
};

/// Five-fold protocol per target dimension: fit features on four subsets,
/// encode the fifth, z-score with training statistics, train an RBF SVM with
/// C = 1 and gamma equal to the feature vector length, and score with +1 as
/// the positive class. A feature-method failure marks the fold failed
/// instead of aborting the sweep.
std::vector<CrossValidationSweep> cross_validate(const std::vector<int>& labels,
                                                 const FeatureExtractor& extractor,
                                                 const std::vector<std::size_t>& m_values,
                                                 std::size_t folds, std::uint64_t seed);

} // namespace mdsfeat
