#pragma once

#include "mdsfeat/cross_validation.hpp"
#include "mdsfeat/dataset.hpp"
#include "mdsfeat/embedding.hpp"
#include "mdsfeat/ilma.hpp"
#include "mdsfeat/smacof.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mdsfeat {

enum class FeatureMethod {
  pca,
  kpca_gaussian,
  kpca_poly,
  imed_mds,
  spm1_mds,
  spm2_mds,
  pyramid_pca,
};

std::string to_string(FeatureMethod m);
FeatureMethod feature_method_from_string(const std::string& name);

/// Full description of one recognition experiment; serializes to/from JSON.
struct ExperimentConfig {
  FeatureMethod method = FeatureMethod::pca;
  std::vector<std::size_t> m_values = {1, 2, 3, 5, 10, 20};
  std::uint64_t seed = 0;
  std::size_t folds = 5;

  double imed_sigma = 1.0;
  std::size_t vocab_size = 200; // SPM M
  std::size_t levels = 2;       // SPM L
  double spm_epsilon = 0.001;
  std::size_t descriptor_step = 8;
  std::size_t descriptor_patch = 16;

  std::size_t mds_max_sweeps = 20;
  double mds_stress_tolerance = 1e-4;

  std::filesystem::path dataset_root;
  DatasetLayout layout = DatasetLayout::uiuc;
  std::filesystem::path cache_dir;
  std::filesystem::path output_root = "runs";

  std::string to_json() const;
  /// Accepts either a bare config document or a run manifest (which embeds
  /// the config under "config"), so a manifest reproduces its run.
  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig load(const std::filesystem::path& path);
};

struct ExperimentResult {
  std::filesystem::path run_dir;
  std::vector<CrossValidationSweep> sweeps;
};

/// Runs the method pipeline over the configured dataset: per fold, fit the
/// feature method on four subsets, encode the fifth, z-score, train the SVM
/// and score. Writes results.csv, scatter.csv (m = 2 test features),
/// traces/, features/ and manifest.json under a fresh run directory.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Same pipeline against an already-loaded dataset (used by tests).
ExperimentResult run_experiment_on(const ExperimentConfig& config, const LabeledImageSet& data);

struct SwissRollBenchConfig {
  std::vector<InitStrategy> strategies = {InitStrategy::random, InitStrategy::largest_first,
                                          InitStrategy::smallest_first};
  std::size_t n = 591;
  std::size_t dims = 3;
  std::size_t sweeps = 10;
  std::size_t repeats = 20;
  std::size_t knn = 8;
  std::uint64_t seed = 0;
  double noise = 0.3;
};

struct SwissRollBenchResult {
  // one trace per repeat, keyed by strategy name; "smacof" holds the
  // equal-time baseline runs
  std::map<std::string, std::vector<RunTrace>> traces;
  std::map<std::string, std::vector<double>> final_stress;
  DistanceMatrix geodesics;
};

/// ILMA per init strategy plus the SMACOF baseline on the Swiss-roll
/// geodesic matrix; each repeat uses seed + repeat index. SMACOF gets the
/// same wall-time budget the matching ILMA run used.
SwissRollBenchResult bench_swissroll(const SwissRollBenchConfig& config);

/// Writes mean stress-per-iteration and stress-vs-time CSVs for a bench run.
void write_bench_csvs(const SwissRollBenchResult& result, const std::filesystem::path& out_dir);

} // namespace mdsfeat
