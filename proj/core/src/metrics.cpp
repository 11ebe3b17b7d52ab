#include "mdsfeat/metrics.hpp"

#include "mdsfeat/errors.hpp"

namespace mdsfeat {

ClassificationMetrics compute_metrics(const std::vector<int>& truth,
                                      const std::vector<int>& predictions) {
  if (truth.size() != predictions.size())
    throw DimensionError("compute_metrics: size mismatch");
  if (truth.empty()) throw InvalidArgument("compute_metrics: empty input");

  ClassificationMetrics m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool pos = truth[i] == 1;
    const bool pred = predictions[i] == 1;
    if (pos && pred) ++m.true_positives;
    else if (!pos && pred) ++m.false_positives;
    else if (!pos && !pred) ++m.true_negatives;
    else ++m.false_negatives;
  }
  const auto tp = static_cast<double>(m.true_positives);
  const auto fp = static_cast<double>(m.false_positives);
  const auto tn = static_cast<double>(m.true_negatives);
  const auto fn = static_cast<double>(m.false_negatives);
  m.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  m.accuracy = (tp + tn) / static_cast<double>(truth.size());
  return m;
}

void FoldReport::finalize() {
  mean_precision = mean_recall = mean_accuracy = 0.0;
  failed_folds = 0;
  std::size_t ok = 0;
  for (const auto& f : folds) {
    if (f.failed) {
      ++failed_folds;
      continue;
    }
    mean_precision += f.metrics.precision;
    mean_recall += f.metrics.recall;
    mean_accuracy += f.metrics.accuracy;
    ++ok;
  }
  if (ok > 0) {
    mean_precision /= static_cast<double>(ok);
    mean_recall /= static_cast<double>(ok);
    mean_accuracy /= static_cast<double>(ok);
  }
}

} // namespace mdsfeat
