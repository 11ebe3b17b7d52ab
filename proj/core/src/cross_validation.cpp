#include "mdsfeat/cross_validation.hpp"

#include <algorithm>
#include <map>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/rng.hpp"
#include "mdsfeat/svm.hpp"
#include "mdsfeat/zscore.hpp"

namespace mdsfeat {

std::vector<std::size_t> stratified_folds(const std::vector<int>& labels, std::size_t folds,
                                          std::uint64_t seed) {
  if (folds < 2) throw InvalidArgument("stratified_folds: need at least two folds");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  Rng rng(seed);
  std::vector<std::size_t> fold_of(labels.size(), 0);
  for (auto& [label, items] : by_class) {
    if (items.size() < folds)
      throw InvalidArgument("stratified_folds: class " + std::to_string(label) + " has only " +
                            std::to_string(items.size()) + " items for " +
                            std::to_string(folds) + " folds");
    const auto perm = random_permutation(items.size(), rng);
    for (std::size_t p = 0; p < perm.size(); ++p) fold_of[items[perm[p]]] = p % folds;
  }
  return fold_of;
}

std::vector<CrossValidationSweep> cross_validate(const std::vector<int>& labels,
                                                 const FeatureExtractor& extractor,
                                                 const std::vector<std::size_t>& m_values,
                                                 std::size_t folds, std::uint64_t seed) {
  if (!extractor) throw InvalidArgument("cross_validate: feature extractor missing");
  const auto fold_of = stratified_folds(labels, folds, seed);

  std::vector<CrossValidationSweep> sweeps;
  for (const std::size_t m : m_values) {
    CrossValidationSweep sweep;
    sweep.m = m;
    for (std::size_t f = 0; f < folds; ++f) {
      FoldMetrics fm;
      std::vector<std::size_t> train_items, test_items;
      for (std::size_t i = 0; i < labels.size(); ++i)
        (fold_of[i] == f ? test_items : train_items).push_back(i);
      fm.test_items = test_items;
      try {
        auto [train_feats, test_feats] = extractor(train_items, test_items, m);
        if (train_feats.rows() != train_items.size() || test_feats.rows() != test_items.size())
          throw DimensionError("cross_validate: extractor row counts do not match items");

        zscore_fit_apply(train_feats, {&test_feats});

        std::vector<int> train_labels(train_items.size());
        for (std::size_t i = 0; i < train_items.size(); ++i)
          train_labels[i] = labels[train_items[i]];

        SvmOptions svm_opts;
        svm_opts.c = 1.0;
        svm_opts.gamma = static_cast<double>(std::max<std::size_t>(train_feats.cols(), 1));
        const SvmModel model = svm_train(train_feats, train_labels, svm_opts);

        std::vector<int> truth(test_items.size()), preds(test_items.size());
        for (std::size_t i = 0; i < test_items.size(); ++i) {
          truth[i] = labels[test_items[i]];
          preds[i] = svm_predict(model, test_feats.row(i));
        }
        fm.predictions = preds;
        fm.metrics = compute_metrics(truth, preds);
      } catch (const std::exception& e) {
        fm.failed = true;
        fm.error = e.what();
      }
      sweep.report.folds.push_back(std::move(fm));
    }
    sweep.report.finalize();
    sweeps.push_back(std::move(sweep));
  }
  return sweeps;
}

} // namespace mdsfeat
