#pragma once

#include <string>
#include <vector>

namespace mdsfeat {

/// Binary classification metrics with +1 as the positive class. Precision is
/// 0 when nothing was predicted positive.
struct ClassificationMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double accuracy = 0.0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t true_negatives = 0;
  std::size_t false_negatives = 0;
};

ClassificationMetrics compute_metrics(const std::vector<int>& truth,
                                      const std::vector<int>& predictions);

struct FoldMetrics {
  ClassificationMetrics metrics;
  bool failed = false;
  std::string error;
  std::vector<std::size_t> test_items;
  std::vector<int> predictions; // parallel to test_items
};

/// Per-fold and mean precision/recall/accuracy; means skip failed folds.
struct FoldReport {
  std::vector<FoldMetrics> folds;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_accuracy = 0.0;
  std::size_t failed_folds = 0;

  void finalize();
};

} // namespace mdsfeat
