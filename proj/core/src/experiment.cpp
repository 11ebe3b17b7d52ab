#include "mdsfeat/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mdsfeat/cache.hpp"
#include "mdsfeat/csv.hpp"
#include "mdsfeat/descriptors.hpp"
#include "mdsfeat/encode.hpp"
#include "mdsfeat/errors.hpp"
#include "mdsfeat/hash.hpp"
#include "mdsfeat/imed.hpp"
#include "mdsfeat/kpca.hpp"
#include "mdsfeat/pairwise.hpp"
#include "mdsfeat/pca.hpp"
#include "mdsfeat/pyramid.hpp"
#include "mdsfeat/spm_distance.hpp"
#include "mdsfeat/stress.hpp"
#include "mdsfeat/swiss_roll.hpp"
#include "mdsfeat/vocabulary.hpp"

namespace mdsfeat {

namespace {

using nlohmann::json;

std::uint64_t mix_seed(std::uint64_t base, const std::string& tag) {
  return fnv1a(tag, base ^ 0x9E3779B97F4A7C15ULL);
}

Matrix gather_rows(const Matrix& src, const std::vector<std::size_t>& rows) {
  Matrix out(rows.size(), src.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j) out(i, j) = src(rows[i], j);
  return out;
}

Matrix gather_block(const Matrix& src, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = src(rows[i], cols[j]);
  return out;
}

Matrix pixel_matrix(const LabeledImageSet& data) {
  if (data.size() == 0) throw InvalidArgument("experiment: empty dataset");
  const std::size_t d = data.images.front().pixel_count();
  Matrix out(data.size(), d);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.images[i].pixel_count() != d)
      throw DimensionError("experiment: images must share one geometry for pixel features");
    for (std::size_t j = 0; j < d; ++j) out(i, j) = data.images[i].pixels[j];
  }
  return out;
}

Matrix zero_diagonal(Matrix m) {
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) m(i, i) = 0.0;
  return m;
}

} // namespace

std::string to_string(FeatureMethod m) {
  switch (m) {
    case FeatureMethod::pca: return "pca";
    case FeatureMethod::kpca_gaussian: return "kpca-gaussian";
    case FeatureMethod::kpca_poly: return "kpca-poly";
    case FeatureMethod::imed_mds: return "imed-mds";
    case FeatureMethod::spm1_mds: return "spm1-mds";
    case FeatureMethod::spm2_mds: return "spm2-mds";
    case FeatureMethod::pyramid_pca: return "pyramid-pca";
  }
  return "unknown";
}

FeatureMethod feature_method_from_string(const std::string& name) {
  for (const auto m : {FeatureMethod::pca, FeatureMethod::kpca_gaussian, FeatureMethod::kpca_poly,
                       FeatureMethod::imed_mds, FeatureMethod::spm1_mds, FeatureMethod::spm2_mds,
                       FeatureMethod::pyramid_pca}) {
    if (to_string(m) == name) return m;
  }
  throw InvalidArgument("unknown feature method '" + name + "'");
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["method"] = mdsfeat::to_string(method);
  j["m_values"] = m_values;
  j["seed"] = seed;
  j["folds"] = folds;
  j["imed_sigma"] = imed_sigma;
  j["vocab_size"] = vocab_size;
  j["levels"] = levels;
  j["spm_epsilon"] = spm_epsilon;
  j["descriptor_step"] = descriptor_step;
  j["descriptor_patch"] = descriptor_patch;
  j["mds_max_sweeps"] = mds_max_sweeps;
  j["mds_stress_tolerance"] = mds_stress_tolerance;
  j["dataset_root"] = dataset_root.string();
  j["layout"] = layout == DatasetLayout::uiuc ? "uiuc" : "class-per-directory";
  j["cache_dir"] = cache_dir.string();
  j["output_root"] = output_root.string();
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("ExperimentConfig: bad JSON: ") + e.what());
  }
  if (j.contains("config")) j = j["config"]; // run manifests embed the config

  ExperimentConfig c;
  try {
    if (j.contains("method")) c.method = feature_method_from_string(j["method"]);
    if (j.contains("m_values")) c.m_values = j["m_values"].get<std::vector<std::size_t>>();
    c.seed = j.value("seed", c.seed);
    c.folds = j.value("folds", c.folds);
    c.imed_sigma = j.value("imed_sigma", c.imed_sigma);
    c.vocab_size = j.value("vocab_size", c.vocab_size);
    c.levels = j.value("levels", c.levels);
    c.spm_epsilon = j.value("spm_epsilon", c.spm_epsilon);
    c.descriptor_step = j.value("descriptor_step", c.descriptor_step);
    c.descriptor_patch = j.value("descriptor_patch", c.descriptor_patch);
    c.mds_max_sweeps = j.value("mds_max_sweeps", c.mds_max_sweeps);
    c.mds_stress_tolerance = j.value("mds_stress_tolerance", c.mds_stress_tolerance);
    c.dataset_root = j.value("dataset_root", std::string());
    if (j.value("layout", "uiuc") == std::string("uiuc")) {
      c.layout = DatasetLayout::uiuc;
    } else {
      c.layout = DatasetLayout::class_per_directory;
    }
    c.cache_dir = j.value("cache_dir", std::string());
    c.output_root = j.value("output_root", std::string("runs"));
  } catch (const json::exception& e) {
    throw DataError(std::string("ExperimentConfig: bad field: ") + e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("ExperimentConfig: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

namespace {

// Per-fold state shared across the m sweep; keyed by the fold's test items.
struct FoldState {
  DistanceMatrix train_distances; // MDS methods
  Matrix cross_distances;         // test x train
  Vocabulary vocab;               // SPM methods
  std::vector<PyramidVector> train_pyramids;
  std::vector<PyramidVector> test_pyramids;
  bool ready = false;
};

struct PipelineArtifacts {
  std::vector<std::pair<std::string, RunTrace>> traces;
  std::vector<std::pair<std::string, Embedding>> embeddings;
  // test features at m=2 for the scatter export: (item, dim0, dim1)
  std::map<std::size_t, std::array<double, 2>> scatter;
};

class Pipeline {
public:
  Pipeline(const ExperimentConfig& config, const LabeledImageSet& data)
      : config_(config), data_(data), cache_(config.cache_dir) {
    dataset_hash_ = hash_hex(dataset_content_hash(data));
  }

  FeatureExtractor extractor(PipelineArtifacts* artifacts) {
    switch (config_.method) {
      case FeatureMethod::pca:
        return pixel_pca_extractor();
      case FeatureMethod::kpca_gaussian:
        return pixel_kpca_extractor(KernelKind::gaussian);
      case FeatureMethod::kpca_poly:
        return pixel_kpca_extractor(KernelKind::polynomial3);
      case FeatureMethod::imed_mds:
      case FeatureMethod::spm1_mds:
      case FeatureMethod::spm2_mds:
        return mds_extractor(artifacts);
      case FeatureMethod::pyramid_pca:
        return pyramid_pca_extractor();
    }
    throw InvalidArgument("experiment: unknown method");
  }

private:
  const Matrix& pixels() {
    if (pixels_.rows() == 0) pixels_ = pixel_matrix(data_);
    return pixels_;
  }

  const std::vector<std::vector<LocalDescriptor>>& descriptors() {
    if (descriptors_.empty()) {
      descriptors_.resize(data_.size());
      for (std::size_t i = 0; i < data_.size(); ++i) {
        descriptors_[i] = dense_descriptors(data_.images[i], config_.descriptor_step,
                                            config_.descriptor_patch);
      }
    }
    return descriptors_;
  }

  FeatureExtractor pixel_pca_extractor() {
    return [this](const std::vector<std::size_t>& train, const std::vector<std::size_t>& test,
                  std::size_t m) {
      const Matrix train_px = gather_rows(pixels(), train);
      const Matrix test_px = gather_rows(pixels(), test);
      const std::size_t usable = std::min(m, std::min(train.size() - 1, train_px.cols()));
      const PcaModel model = pca_fit(train_px, usable);
      return std::pair{pca_project_all(model, train_px), pca_project_all(model, test_px)};
    };
  }

  FeatureExtractor pixel_kpca_extractor(KernelKind kind) {
    return [this, kind](const std::vector<std::size_t>& train,
                        const std::vector<std::size_t>& test, std::size_t m) {
      const Matrix train_px = gather_rows(pixels(), train);
      const Matrix test_px = gather_rows(pixels(), test);
      KernelParams kernel;
      kernel.kind = kind;
      if (kind == KernelKind::gaussian) kernel.sigma = gaussian_sigma_auto(train_px);
      const KpcaModel model = kpca_fit(train_px, kernel, std::min(m, train.size() - 1));
      return std::pair{kpca_project_all(model, train_px), kpca_project_all(model, test_px)};
    };
  }

  FeatureExtractor pyramid_pca_extractor() {
    return [this](const std::vector<std::size_t>& train, const std::vector<std::size_t>& test,
                  std::size_t m) {
      FoldState& fold = fold_state(train, test);
      const Matrix train_vec = pyramid_matrix(fold.train_pyramids);
      const Matrix test_vec = pyramid_matrix(fold.test_pyramids);
      const std::size_t usable = std::min(m, std::min(train.size() - 1, train_vec.cols()));
      const PcaModel model = pca_fit(train_vec, usable);
      return std::pair{pca_project_all(model, train_vec), pca_project_all(model, test_vec)};
    };
  }

  FeatureExtractor mds_extractor(PipelineArtifacts* artifacts) {
    return [this, artifacts](const std::vector<std::size_t>& train,
                             const std::vector<std::size_t>& test, std::size_t m) {
      FoldState& fold = fold_state(train, test);

      IlmaOptions opts;
      opts.max_adjustment_iterations = config_.mds_max_sweeps;
      opts.relative_stress_tolerance = config_.mds_stress_tolerance;
      opts.init_strategy = InitStrategy::random;
      const std::string tag = "m" + std::to_string(m) + "_fold" + fold_tag(test);
      opts.seed = mix_seed(config_.seed, "ilma|" + tag);

      auto [embedding, trace] = ilma_fit(fold.train_distances, m, opts);

      Matrix test_feats(test.size(), m);
      for (std::size_t e = 0; e < test.size(); ++e) {
        const auto code = encode_new(embedding, fold.cross_distances.row(e));
        for (std::size_t j = 0; j < m; ++j) test_feats(e, j) = code[j];
      }
      if (artifacts) {
        artifacts->traces.emplace_back(tag, std::move(trace));
        if (m == 2) {
          for (std::size_t e = 0; e < test.size(); ++e)
            artifacts->scatter[test[e]] = {test_feats(e, 0), test_feats(e, 1)};
        }
        artifacts->embeddings.emplace_back(tag, embedding);
      }
      return std::pair{embedding.codes, std::move(test_feats)};
    };
  }

  static Matrix pyramid_matrix(const std::vector<PyramidVector>& pyramids) {
    if (pyramids.empty()) throw InvalidArgument("experiment: no pyramid vectors");
    Matrix out(pyramids.size(), pyramids.front().weighted_histogram.size());
    for (std::size_t i = 0; i < pyramids.size(); ++i)
      for (std::size_t j = 0; j < out.cols(); ++j)
        out(i, j) = pyramids[i].weighted_histogram[j];
    return out;
  }

  std::string fold_tag(const std::vector<std::size_t>& test) const {
    return std::to_string(test.empty() ? 9999 : test.front());
  }

  FoldState& fold_state(const std::vector<std::size_t>& train,
                        const std::vector<std::size_t>& test) {
    FoldState& fold = folds_[test];
    if (fold.ready) return fold;
    switch (config_.method) {
      case FeatureMethod::imed_mds:
        prepare_imed_fold(fold, train, test);
        break;
      case FeatureMethod::spm1_mds:
      case FeatureMethod::spm2_mds:
      case FeatureMethod::pyramid_pca:
        prepare_spm_fold(fold, train, test);
        break;
      default:
        throw InvalidArgument("experiment: fold state requested for a stateless method");
    }
    fold.ready = true;
    return fold;
  }

  // Full IMED matrix over the whole dataset, computed through the exact
  // standardizing transform and cached on disk.
  const Matrix& imed_full() {
    if (imed_full_.rows() > 0) return imed_full_;
    const std::string key = "imed_full_" + dataset_hash_ + "_sigma" +
                            format_value(config_.imed_sigma);
    if (auto cached = cache_.load(key); cached && cached->rows() == data_.size()) {
      imed_full_ = std::move(*cached);
      return imed_full_;
    }
    const ImedParams params{config_.imed_sigma};
    std::vector<GrayImage> transformed(data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i)
      transformed[i] = standardizing_transform(data_.images[i], params);
    imed_full_ = build_distance_matrix(transformed, [](const GrayImage& a, const GrayImage& b) {
                   return euclidean_distance(a, b);
                 }).values();
    cache_.store(key, imed_full_,
                 {{"measure", "imed"}, {"sigma", format_value(config_.imed_sigma)},
                  {"dataset", dataset_hash_}});
    return imed_full_;
  }

  void prepare_imed_fold(FoldState& fold, const std::vector<std::size_t>& train,
                         const std::vector<std::size_t>& test) {
    const Matrix& full = imed_full();
    fold.train_distances = DistanceMatrix(zero_diagonal(gather_block(full, train, train)));
    fold.cross_distances = gather_block(full, test, train);
  }

  void prepare_spm_fold(FoldState& fold, const std::vector<std::size_t>& train,
                        const std::vector<std::size_t>& test) {
    const auto& descs = descriptors();
    const std::string fold_id = fold_tag(test);
    const std::uint64_t vocab_seed = mix_seed(config_.seed, "vocab|fold" + fold_id);
    const std::string spm_params = "M" + std::to_string(config_.vocab_size) + "_L" +
                                   std::to_string(config_.levels) + "_s" +
                                   std::to_string(config_.descriptor_step) + "_p" +
                                   std::to_string(config_.descriptor_patch) + "_seed" +
                                   std::to_string(vocab_seed);

    // vocabulary over training descriptors only
    const std::string vocab_key = "spm_vocab_" + dataset_hash_ + "_" + spm_params +
                                  "_fold" + fold_id;
    if (auto cached = cache_.load(vocab_key); cached && cached->rows() == config_.vocab_size) {
      fold.vocab.centroids = std::move(*cached);
    } else {
      std::size_t total = 0;
      for (const std::size_t i : train) total += descs[i].size();
      Matrix pooled(total, kDescriptorDim);
      std::size_t w = 0;
      for (const std::size_t i : train)
        for (const auto& desc : descs[i]) {
          for (std::size_t j = 0; j < kDescriptorDim; ++j) pooled(w, j) = desc.vector[j];
          ++w;
        }
      Rng rng(vocab_seed);
      fold.vocab = build_vocabulary(pooled, config_.vocab_size, rng);
      cache_.store(vocab_key, fold.vocab.centroids,
                   {{"kind", "spm_vocab"}, {"dataset", dataset_hash_}, {"fold", fold_id}});
    }

    auto pyramids_of = [&](const std::vector<std::size_t>& items) {
      std::vector<PyramidVector> out;
      out.reserve(items.size());
      for (const std::size_t i : items) {
        out.push_back(pyramid_vector(descs[i], data_.images[i].height, data_.images[i].width,
                                     fold.vocab, config_.levels));
      }
      return out;
    };
    fold.train_pyramids = pyramids_of(train);
    fold.test_pyramids = pyramids_of(test);
    if (config_.method == FeatureMethod::pyramid_pca) return;

    // pairwise similarities, shared by spm1 and spm2 through the cache
    const std::string train_key = "spm_sim_train_" + dataset_hash_ + "_" + spm_params +
                                  "_fold" + fold_id;
    Matrix sim_train;
    if (auto cached = cache_.load(train_key); cached && cached->rows() == train.size()) {
      sim_train = std::move(*cached);
    } else {
      sim_train = build_distance_matrix(fold.train_pyramids,
                                        [](const PyramidVector& a, const PyramidVector& b) {
                                          return pyramid_match_similarity(a, b);
                                        })
                      .values();
      for (std::size_t i = 0; i < sim_train.rows(); ++i) sim_train(i, i) = 1.0;
      cache_.store(train_key, sim_train,
                   {{"kind", "spm_similarity"}, {"dataset", dataset_hash_}, {"fold", fold_id}});
    }

    const std::string cross_key = "spm_sim_cross_" + dataset_hash_ + "_" + spm_params +
                                  "_fold" + fold_id;
    Matrix sim_cross;
    if (auto cached = cache_.load(cross_key); cached && cached->rows() == test.size()) {
      sim_cross = std::move(*cached);
    } else {
      sim_cross = Matrix(test.size(), train.size());
      for (std::size_t e = 0; e < test.size(); ++e)
        for (std::size_t t = 0; t < train.size(); ++t)
          sim_cross(e, t) =
              pyramid_match_similarity(fold.test_pyramids[e], fold.train_pyramids[t]);
      cache_.store(cross_key, sim_cross,
                   {{"kind", "spm_similarity_cross"}, {"dataset", dataset_hash_},
                    {"fold", fold_id}});
    }

    const bool use_spm2 = config_.method == FeatureMethod::spm2_mds;
    auto convert = [&](double k) {
      return use_spm2 ? spm2_distance(k, config_.spm_epsilon) : spm1_distance(k);
    };
    Matrix dist_train(sim_train.rows(), sim_train.cols());
    for (std::size_t i = 0; i < sim_train.rows(); ++i)
      for (std::size_t j = 0; j < sim_train.cols(); ++j)
        dist_train(i, j) = i == j ? 0.0 : convert(sim_train(i, j));
    fold.train_distances = DistanceMatrix(std::move(dist_train));

    fold.cross_distances = Matrix(sim_cross.rows(), sim_cross.cols());
    for (std::size_t i = 0; i < sim_cross.rows(); ++i)
      for (std::size_t j = 0; j < sim_cross.cols(); ++j)
        fold.cross_distances(i, j) = convert(sim_cross(i, j));
  }

  const ExperimentConfig& config_;
  const LabeledImageSet& data_;
  MatrixCache cache_;
  std::string dataset_hash_;
  Matrix pixels_;
  std::vector<std::vector<LocalDescriptor>> descriptors_;
  Matrix imed_full_;
  std::map<std::vector<std::size_t>, FoldState> folds_;
};

std::filesystem::path make_run_dir(const ExperimentConfig& config) {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
  const std::string stamp = std::to_string(secs.count());
  const std::string confighash = hash_hex(fnv1a(config.to_json())).substr(0, 8);
  std::filesystem::path dir = config.output_root / (stamp + "-" + confighash);
  for (int suffix = 1; std::filesystem::exists(dir); ++suffix) {
    dir = config.output_root / (stamp + "-" + confighash + "-" + std::to_string(suffix));
  }
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace

ExperimentResult run_experiment_on(const ExperimentConfig& config,
                                   const LabeledImageSet& data) {
  if (data.size() == 0) throw DataError("run_experiment: empty dataset");
  const auto wall_start = std::chrono::steady_clock::now();

  // binary task: class id 1 (uiuc "car") against everything else
  std::vector<int> labels(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) labels[i] = data.labels[i] == 1 ? 1 : -1;

  Pipeline pipeline(config, data);
  PipelineArtifacts artifacts;
  const FeatureExtractor extractor = pipeline.extractor(&artifacts);

  ExperimentResult result;
  result.sweeps = cross_validate(labels, extractor, config.m_values, config.folds, config.seed);
  result.run_dir = make_run_dir(config);

  // results.csv: the data behind the per-dimension performance curves
  {
    std::ofstream out(result.run_dir / "results.csv");
    out << "method,m,fold,precision,recall,accuracy\n";
    for (const auto& sweep : result.sweeps) {
      for (std::size_t f = 0; f < sweep.report.folds.size(); ++f) {
        const auto& fold = sweep.report.folds[f];
        out << to_string(config.method) << ',' << sweep.m << ',' << f << ',';
        if (fold.failed) {
          out << "failed,failed,failed\n";
        } else {
          out << format_value(fold.metrics.precision) << ','
              << format_value(fold.metrics.recall) << ','
              << format_value(fold.metrics.accuracy) << '\n';
        }
      }
    }
  }

  // scatter.csv: 2-d test features per item
  if (!artifacts.scatter.empty()) {
    std::ofstream out(result.run_dir / "scatter.csv");
    out << "method,label,dim0,dim1\n";
    for (const auto& [item, xy] : artifacts.scatter) {
      out << to_string(config.method) << ',' << labels[item] << ',' << format_value(xy[0])
          << ',' << format_value(xy[1]) << '\n';
    }
  }

  if (!artifacts.traces.empty()) {
    std::filesystem::create_directories(result.run_dir / "traces");
    for (const auto& [tag, trace] : artifacts.traces)
      trace.save_csv(result.run_dir / "traces" / ("trace_" + tag + ".csv"));
  }
  if (!artifacts.embeddings.empty()) {
    std::filesystem::create_directories(result.run_dir / "features");
    for (const auto& [tag, emb] : artifacts.embeddings)
      emb.save_csv(result.run_dir / "features" / ("embedding_" + tag + ".csv"));
  }

  // manifest: config, dataset hash, artifact hashes, wall time
  {
    json manifest;
    manifest["config"] = json::parse(config.to_json());
    manifest["dataset_hash"] = hash_hex(dataset_content_hash(data));
    manifest["dataset_items"] = data.size();
    manifest["layout"] = config.layout == DatasetLayout::uiuc ? "uiuc" : "class-per-directory";
    json hashes;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(result.run_dir)) {
      if (!entry.is_regular_file()) continue;
      const auto rel = std::filesystem::relative(entry.path(), result.run_dir).string();
      if (rel == "manifest.json") continue;
      hashes[rel] = hash_hex(hash_file(entry.path()));
    }
    manifest["artifact_hashes"] = hashes;
    manifest["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    std::ofstream out(result.run_dir / "manifest.json");
    out << manifest.dump(2) << "\n";
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.dataset_root.empty())
    throw InvalidArgument("run_experiment: dataset_root not set");
  const LabeledImageSet data = load_image_dataset(config.dataset_root, config.layout);
  return run_experiment_on(config, data);
}

namespace {

std::string strategy_name(InitStrategy s) {
  switch (s) {
    case InitStrategy::random: return "random";
    case InitStrategy::largest_first: return "largest";
    case InitStrategy::smallest_first: return "smallest";
  }
  return "unknown";
}

} // namespace

SwissRollBenchResult bench_swissroll(const SwissRollBenchConfig& config) {
  SwissRollSpec spec;
  spec.n = config.n;
  spec.noise = config.noise;
  spec.seed = config.seed;
  const PointCloud cloud = swiss_roll(spec);

  SwissRollBenchResult result;
  result.geodesics = geodesic_distance_matrix(cloud, config.knn);

  std::vector<double> random_times(config.repeats, 0.0);
  for (const InitStrategy strategy : config.strategies) {
    const std::string name = strategy_name(strategy);
    for (std::size_t rep = 0; rep < config.repeats; ++rep) {
      IlmaOptions opts;
      opts.max_adjustment_iterations = config.sweeps;
      opts.relative_stress_tolerance = 1e-300; // run every sweep
      opts.init_strategy = strategy;
      opts.seed = config.seed + rep;
      auto [emb, trace] = ilma_fit(result.geodesics, config.dims, opts);
      if (strategy == InitStrategy::random)
        random_times[rep] = trace.samples.back().elapsed_seconds;
      result.final_stress[name].push_back(emb.fit_raw_stress);
      result.traces[name].push_back(std::move(trace));
    }
  }

  // SMACOF baseline at the same wall budget as the matching random-init run
  for (std::size_t rep = 0; rep < config.repeats; ++rep) {
    SmacofOptions opts;
    opts.max_iterations = 1000000;
    opts.relative_stress_tolerance = 1e-300;
    opts.seed = config.seed + rep;
    opts.time_budget_seconds = random_times[rep] > 0 ? random_times[rep] : 1.0;
    auto [emb, trace] = smacof_fit(result.geodesics, config.dims, opts);
    result.final_stress["smacof"].push_back(emb.fit_raw_stress);
    result.traces["smacof"].push_back(std::move(trace));
  }
  return result;
}

void write_bench_csvs(const SwissRollBenchResult& result, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const auto& [name, traces] : result.traces) {
    std::size_t longest = 0;
    for (const auto& t : traces) longest = std::max(longest, t.samples.size());
    std::ofstream out(out_dir / ("trace_" + name + "_mean.csv"));
    out << "iteration,mean_raw_stress,mean_elapsed_seconds,runs\n";
    for (std::size_t i = 0; i < longest; ++i) {
      double stress = 0.0, elapsed = 0.0;
      std::size_t count = 0;
      for (const auto& t : traces) {
        if (i >= t.samples.size()) continue;
        stress += t.samples[i].raw_stress;
        elapsed += t.samples[i].elapsed_seconds;
        ++count;
      }
      out << i << ',' << format_value(stress / static_cast<double>(count)) << ','
          << format_value(elapsed / static_cast<double>(count)) << ',' << count << '\n';
    }
  }
  std::ofstream out(out_dir / "final_stress.csv");
  out << "method,repeat,final_raw_stress\n";
  for (const auto& [name, values] : result.final_stress) {
    for (std::size_t rep = 0; rep < values.size(); ++rep)
      out << name << ',' << rep << ',' << format_value(values[rep]) << '\n';
  }
}

} // namespace mdsfeat
