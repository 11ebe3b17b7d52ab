#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mdsfeat/errors.hpp"
#include "mdsfeat/experiment.hpp"
#include "mdsfeat/hash.hpp"
#include "mdsfeat/rng.hpp"
#include "support/test_helpers.hpp"

using namespace mdsfeat;

namespace {

// small synthetic recognition set: class 1 carries a strong vertical bar,
// class -1 a horizontal one, both over noise
LabeledImageSet synthetic_set(std::size_t per_class, std::size_t h, std::size_t w,
                              std::uint64_t seed) {
  LabeledImageSet set;
  set.class_names = {"neg", "pos"};
  Rng rng(seed);
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const bool positive = i < per_class;
    GrayImage img(h, w);
    for (auto& p : img.pixels) p = 0.2 * rng.next_double();
    const std::size_t band = 2 + i % 3;
    if (positive) {
      const std::size_t c0 = w / 3 + i % 5;
      for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = c0; c < std::min(w, c0 + band); ++c) img.at(r, c) = 1.0;
    } else {
      const std::size_t r0 = h / 3 + i % 5;
      for (std::size_t r = r0; r < std::min(h, r0 + band); ++r)
        for (std::size_t c = 0; c < w; ++c) img.at(r, c) = 1.0;
    }
    set.images.push_back(std::move(img));
    set.labels.push_back(positive ? 1 : -1);
    set.source_paths.push_back("synthetic");
  }
  return set;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("experiment config json round trip") {
  ExperimentConfig config;
  config.method = FeatureMethod::spm2_mds;
  config.m_values = {1, 2, 5};
  config.seed = 77;
  config.vocab_size = 32;
  config.dataset_root = "/data/somewhere";
  const ExperimentConfig back = ExperimentConfig::from_json(config.to_json());
  CHECK(back.method == FeatureMethod::spm2_mds);
  CHECK(back.m_values == std::vector<std::size_t>{1, 2, 5});
  CHECK(back.seed == 77);
  CHECK(back.vocab_size == 32);
  CHECK(back.dataset_root == std::filesystem::path("/data/somewhere"));
  CHECK_THROWS_AS(ExperimentConfig::from_json("{ bad"), DataError);
  CHECK_THROWS_AS(feature_method_from_string("nope"), InvalidArgument);
}

TEST_CASE("pca experiment end to end with per-fold rows") {
  test::TempDir tmp("mdsfeat-exp-pca");
  const LabeledImageSet data = synthetic_set(15, 16, 24, 3);

  ExperimentConfig config;
  config.method = FeatureMethod::pca;
  config.m_values = {1, 2};
  config.folds = 5;
  config.seed = 5;
  config.output_root = tmp.path() / "runs";

  const ExperimentResult result = run_experiment_on(config, data);
  CHECK(std::filesystem::exists(result.run_dir / "results.csv"));
  CHECK(std::filesystem::exists(result.run_dir / "manifest.json"));

  const std::string results = slurp(result.run_dir / "results.csv");
  // header + folds x m rows
  CHECK(std::count(results.begin(), results.end(), '\n') == 1 + 5 * 2);
  REQUIRE(result.sweeps.size() == 2);
  for (const auto& sweep : result.sweeps) CHECK(sweep.report.failed_folds == 0);
  // bars are linearly separable through pixel PCA at m=2
  CHECK(result.sweeps[1].report.mean_accuracy > 0.9);
}

TEST_CASE("spm1-mds experiment produces traces, scatter and embeddings") {
  test::TempDir tmp("mdsfeat-exp-spm");
  const LabeledImageSet data = synthetic_set(10, 20, 20, 11);

  ExperimentConfig config;
  config.method = FeatureMethod::spm1_mds;
  config.m_values = {2};
  config.folds = 5;
  config.seed = 13;
  config.vocab_size = 8;
  config.levels = 1;
  config.descriptor_step = 4;
  config.descriptor_patch = 8;
  config.mds_max_sweeps = 5;
  config.output_root = tmp.path() / "runs";
  config.cache_dir = tmp.path() / "cache";

  const ExperimentResult result = run_experiment_on(config, data);
  CHECK(std::filesystem::exists(result.run_dir / "scatter.csv"));
  CHECK(std::filesystem::is_directory(result.run_dir / "traces"));
  CHECK(std::filesystem::is_directory(result.run_dir / "features"));
  REQUIRE(result.sweeps.size() == 1);
  CHECK(result.sweeps[0].report.failed_folds == 0);
  // every item appears exactly once in the scatter (as a test item)
  const std::string scatter = slurp(result.run_dir / "scatter.csv");
  CHECK(std::count(scatter.begin(), scatter.end(), '\n') == 1 + 20);

  // rerun with the same seed: identical results.csv and scatter.csv bytes
  const ExperimentResult again = run_experiment_on(config, data);
  CHECK(hash_file(result.run_dir / "results.csv") == hash_file(again.run_dir / "results.csv"));
  CHECK(hash_file(result.run_dir / "scatter.csv") == hash_file(again.run_dir / "scatter.csv"));
  for (const auto& entry :
       std::filesystem::directory_iterator(result.run_dir / "features")) {
    const auto other = again.run_dir / "features" / entry.path().filename();
    CHECK(std::filesystem::exists(other));
    CHECK(hash_file(entry.path()) == hash_file(other));
  }
}

TEST_CASE("manifest reproduces the run configuration") {
  test::TempDir tmp("mdsfeat-exp-manifest");
  const LabeledImageSet data = synthetic_set(8, 12, 16, 21);

  ExperimentConfig config;
  config.method = FeatureMethod::pca;
  config.m_values = {1};
  config.folds = 4;
  config.seed = 99;
  config.output_root = tmp.path() / "runs";

  const ExperimentResult result = run_experiment_on(config, data);
  const ExperimentConfig from_manifest = ExperimentConfig::load(result.run_dir / "manifest.json");
  CHECK(from_manifest.method == config.method);
  CHECK(from_manifest.seed == config.seed);
  CHECK(from_manifest.m_values == config.m_values);
  CHECK(from_manifest.folds == config.folds);

  const ExperimentResult again = run_experiment_on(from_manifest, data);
  CHECK(hash_file(result.run_dir / "results.csv") == hash_file(again.run_dir / "results.csv"));
}

TEST_CASE("imed-mds experiment works and reuses the cache") {
  test::TempDir tmp("mdsfeat-exp-imed");
  const LabeledImageSet data = synthetic_set(6, 10, 12, 31);

  ExperimentConfig config;
  config.method = FeatureMethod::imed_mds;
  config.m_values = {2};
  config.folds = 3;
  config.seed = 17;
  config.mds_max_sweeps = 4;
  config.output_root = tmp.path() / "runs";
  config.cache_dir = tmp.path() / "cache";

  const ExperimentResult first = run_experiment_on(config, data);
  CHECK(first.sweeps[0].report.failed_folds == 0);
  // cache directory now holds the full imed matrix + sidecar
  bool found = false;
  for (const auto& entry : std::filesystem::directory_iterator(config.cache_dir))
    if (entry.path().extension() == ".json") found = true;
  CHECK(found);

  const ExperimentResult second = run_experiment_on(config, data);
  CHECK(hash_file(first.run_dir / "results.csv") == hash_file(second.run_dir / "results.csv"));
}

TEST_CASE("swiss roll bench smoke run") {
  test::TempDir tmp("mdsfeat-bench");
  SwissRollBenchConfig config;
  config.n = 70;
  config.sweeps = 3;
  config.repeats = 2;
  config.knn = 7;
  config.seed = 55;
  config.strategies = {InitStrategy::random, InitStrategy::largest_first};

  const SwissRollBenchResult result = bench_swissroll(config);
  REQUIRE(result.traces.count("random") == 1);
  REQUIRE(result.traces.count("largest") == 1);
  REQUIRE(result.traces.count("smacof") == 1);
  CHECK(result.traces.at("random").size() == 2);
  for (const auto& trace : result.traces.at("random")) {
    REQUIRE(trace.samples.size() == 4); // init + 3 sweeps
    for (std::size_t i = 1; i < trace.samples.size(); ++i)
      CHECK(trace.samples[i].raw_stress <=
            trace.samples[i - 1].raw_stress * (1.0 + 1e-9) + 1e-20);
  }

  write_bench_csvs(result, tmp.path() / "bench");
  CHECK(std::filesystem::exists(tmp.path() / "bench" / "trace_random_mean.csv"));
  CHECK(std::filesystem::exists(tmp.path() / "bench" / "trace_smacof_mean.csv"));
  CHECK(std::filesystem::exists(tmp.path() / "bench" / "final_stress.csv"));
}
