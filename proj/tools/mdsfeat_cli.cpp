// mdsfeat: MDS feature learning from pairwise distances.
//
// Subcommands cover the pipeline stages so each intermediate artifact can be
// produced and inspected on its own: swissroll -> distmat -> fit -> encode,
// spm vocab / spm vectors for the pyramid path, eval for the full
// cross-validated recognition experiment, bench for the solver benchmark.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "mdsfeat/csv.hpp"
#include "mdsfeat/dataset.hpp"
#include "mdsfeat/descriptors.hpp"
#include "mdsfeat/encode.hpp"
#include "mdsfeat/errors.hpp"
#include "mdsfeat/experiment.hpp"
#include "mdsfeat/geodesic.hpp"
#include "mdsfeat/gray_image.hpp"
#include "mdsfeat/hash.hpp"
#include "mdsfeat/ilma.hpp"
#include "mdsfeat/imed.hpp"
#include "mdsfeat/pairwise.hpp"
#include "mdsfeat/pyramid.hpp"
#include "mdsfeat/smacof.hpp"
#include "mdsfeat/spm_distance.hpp"
#include "mdsfeat/stress.hpp"
#include "mdsfeat/swiss_roll.hpp"
#include "mdsfeat/vocabulary.hpp"

namespace {

using namespace mdsfeat;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

Matrix load_points(const std::filesystem::path& path) {
  return read_csv_auto(path).values;
}

void save_points(const std::filesystem::path& path, const Matrix& pts) {
  std::vector<std::string> header(pts.cols());
  for (std::size_t j = 0; j < pts.cols(); ++j) header[j] = "dim" + std::to_string(j);
  write_csv(path, pts, header);
}

DatasetLayout layout_from(const std::string& name) {
  if (name == "uiuc") return DatasetLayout::uiuc;
  if (name == "dirs" || name == "class-per-directory") return DatasetLayout::class_per_directory;
  throw CLI::ValidationError("--layout", "expected 'uiuc' or 'dirs'");
}

InitStrategy strategy_from(const std::string& name) {
  if (name == "random") return InitStrategy::random;
  if (name == "largest") return InitStrategy::largest_first;
  if (name == "smallest") return InitStrategy::smallest_first;
  throw CLI::ValidationError("--strategy", "expected random|largest|smallest");
}

struct SpmToolParams {
  std::size_t step = 8;
  std::size_t patch = 16;
  std::size_t levels = 2;
};

std::vector<PyramidVector> pyramids_for(const LabeledImageSet& data, const Vocabulary& vocab,
                                        const SpmToolParams& params) {
  std::vector<PyramidVector> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto descs = dense_descriptors(data.images[i], params.step, params.patch);
    out.push_back(
        pyramid_vector(descs, data.images[i].height, data.images[i].width, vocab, params.levels));
  }
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"MDS feature learning: embeddings from pairwise image distances"};
  app.require_subcommand(1);

  // ---- swissroll ----------------------------------------------------------
  auto* sc_roll = app.add_subcommand("swissroll", "Generate the Swiss roll point cloud");
  SwissRollSpec roll;
  std::string roll_out = "swissroll.csv";
  sc_roll->add_option("--n", roll.n, "Point count")->capture_default_str();
  sc_roll->add_option("--noise", roll.noise, "Grid jitter amplitude")->capture_default_str();
  sc_roll->add_option("--seed", roll.seed, "Rng seed")->capture_default_str();
  sc_roll->add_option("--out", roll_out, "Output CSV")->capture_default_str();

  // ---- distmat ------------------------------------------------------------
  auto* sc_dist = app.add_subcommand("distmat", "Build a distance matrix");
  std::string dist_points, dist_images, dist_measure = "euclidean", dist_layout = "uiuc";
  std::string dist_vocab;
  std::string dist_out = "distances.csv";
  std::size_t dist_knn = 8;
  double dist_sigma = 1.0, dist_epsilon = 0.001;
  SpmToolParams dist_spm;
  sc_dist->add_option("--points", dist_points, "Point CSV input (rows are points)");
  sc_dist->add_option("--images", dist_images, "Image dataset directory");
  sc_dist->add_option("--layout", dist_layout, "Dataset layout: uiuc|dirs")
      ->capture_default_str();
  sc_dist->add_option("--measure", dist_measure,
                      "euclidean|geodesic (points) or euclidean|imed|spm1|spm2 (images)")
      ->capture_default_str();
  sc_dist->add_option("--knn", dist_knn, "Neighbors for the geodesic graph")
      ->capture_default_str();
  sc_dist->add_option("--sigma", dist_sigma, "IMED Gaussian width")->capture_default_str();
  sc_dist->add_option("--epsilon", dist_epsilon, "SPM2 epsilon")->capture_default_str();
  sc_dist->add_option("--vocab", dist_vocab, "Vocabulary CSV (required for spm measures)");
  sc_dist->add_option("--levels", dist_spm.levels, "SPM levels")->capture_default_str();
  sc_dist->add_option("--step", dist_spm.step, "Descriptor grid step")->capture_default_str();
  sc_dist->add_option("--patch", dist_spm.patch, "Descriptor patch size")->capture_default_str();
  sc_dist->add_option("--out", dist_out, "Output CSV")->capture_default_str();

  // ---- fit ----------------------------------------------------------------
  auto* sc_fit = app.add_subcommand("fit", "Fit MDS codes to a distance matrix");
  std::string fit_dist, fit_out = "embedding.csv", fit_trace, fit_algo = "ilma",
              fit_strategy = "random";
  std::size_t fit_dims = 2, fit_sweeps = 50;
  double fit_tolerance = 1e-4;
  std::uint64_t fit_seed = 0;
  sc_fit->add_option("--distances", fit_dist, "Distance matrix CSV")->required();
  sc_fit->add_option("--dims", fit_dims, "Embedding dimension")->capture_default_str();
  sc_fit->add_option("--algo", fit_algo, "ilma|smacof")->capture_default_str();
  sc_fit->add_option("--strategy", fit_strategy, "ILMA init: random|largest|smallest")
      ->capture_default_str();
  sc_fit->add_option("--max-sweeps", fit_sweeps, "Adjustment sweep cap")->capture_default_str();
  sc_fit->add_option("--tolerance", fit_tolerance, "Relative stress tolerance")
      ->capture_default_str();
  sc_fit->add_option("--seed", fit_seed, "Rng seed")->capture_default_str();
  sc_fit->add_option("--out", fit_out, "Embedding CSV")->capture_default_str();
  sc_fit->add_option("--trace", fit_trace, "Optional stress trace CSV");

  // ---- encode -------------------------------------------------------------
  auto* sc_encode = app.add_subcommand("encode", "Encode new items into a fitted embedding");
  std::string enc_embedding, enc_dists, enc_out = "codes.csv";
  sc_encode->add_option("--embedding", enc_embedding, "Training embedding CSV")->required();
  sc_encode
      ->add_option("--distances", enc_dists,
                   "CSV of new-item rows: distances to each training item")
      ->required();
  sc_encode->add_option("--out", enc_out, "Output code CSV")->capture_default_str();

  // ---- spm ----------------------------------------------------------------
  auto* sc_spm = app.add_subcommand("spm", "Spatial pyramid matching tools");
  sc_spm->require_subcommand(1);
  auto* sc_vocab = sc_spm->add_subcommand("vocab", "Train a visual vocabulary");
  std::string vb_images, vb_layout = "uiuc", vb_out = "vocab.csv";
  std::size_t vb_size = 200;
  std::uint64_t vb_seed = 0;
  SpmToolParams vb_params;
  sc_vocab->add_option("--images", vb_images, "Image dataset directory")->required();
  sc_vocab->add_option("--layout", vb_layout, "uiuc|dirs")->capture_default_str();
  sc_vocab->add_option("--vocab-size", vb_size, "Number of visual words")->capture_default_str();
  sc_vocab->add_option("--step", vb_params.step, "Descriptor grid step")->capture_default_str();
  sc_vocab->add_option("--patch", vb_params.patch, "Descriptor patch size")
      ->capture_default_str();
  sc_vocab->add_option("--seed", vb_seed, "Rng seed")->capture_default_str();
  sc_vocab->add_option("--out", vb_out, "Vocabulary CSV (JSON sidecar written next to it)")
      ->capture_default_str();

  auto* sc_vectors = sc_spm->add_subcommand("vectors", "Compute spatial pyramid vectors");
  std::string vc_images, vc_layout = "uiuc", vc_vocab, vc_out = "pyramids.csv";
  SpmToolParams vc_params;
  sc_vectors->add_option("--images", vc_images, "Image dataset directory")->required();
  sc_vectors->add_option("--layout", vc_layout, "uiuc|dirs")->capture_default_str();
  sc_vectors->add_option("--vocab", vc_vocab, "Vocabulary CSV")->required();
  sc_vectors->add_option("--levels", vc_params.levels, "Pyramid levels")->capture_default_str();
  sc_vectors->add_option("--step", vc_params.step, "Descriptor grid step")
      ->capture_default_str();
  sc_vectors->add_option("--patch", vc_params.patch, "Descriptor patch size")
      ->capture_default_str();
  sc_vectors->add_option("--out", vc_out, "Output CSV, one image per row")
      ->capture_default_str();

  // ---- eval ---------------------------------------------------------------
  auto* sc_eval = app.add_subcommand("eval", "Cross-validated recognition experiment");
  ExperimentConfig eval_config;
  std::string eval_config_file, eval_method = "pca", eval_layout = "uiuc", eval_m_list;
  std::string eval_images, eval_cache, eval_out_root;
  sc_eval->add_option("--config", eval_config_file, "JSON config (or run manifest) to start from");
  sc_eval->add_option("--images", eval_images, "Image dataset directory");
  sc_eval->add_option("--layout", eval_layout, "uiuc|dirs")->capture_default_str();
  sc_eval->add_option("--method", eval_method,
                      "pca|kpca-gaussian|kpca-poly|imed-mds|spm1-mds|spm2-mds|pyramid-pca")
      ->capture_default_str();
  sc_eval->add_option("--m-values", eval_m_list, "Comma-separated feature lengths");
  sc_eval->add_option("--seed", eval_config.seed, "Seed for folds/vocab/MDS")
      ->capture_default_str();
  sc_eval->add_option("--folds", eval_config.folds, "Fold count")->capture_default_str();
  sc_eval->add_option("--sigma", eval_config.imed_sigma, "IMED sigma")->capture_default_str();
  sc_eval->add_option("--vocab-size", eval_config.vocab_size, "SPM vocabulary size")
      ->capture_default_str();
  sc_eval->add_option("--levels", eval_config.levels, "SPM levels")->capture_default_str();
  sc_eval->add_option("--epsilon", eval_config.spm_epsilon, "SPM2 epsilon")
      ->capture_default_str();
  sc_eval->add_option("--max-sweeps", eval_config.mds_max_sweeps, "ILMA sweep cap")
      ->capture_default_str();
  sc_eval->add_option("--cache-dir", eval_cache, "Distance cache directory");
  sc_eval->add_option("--out", eval_out_root, "Run directory root");

  // ---- bench --------------------------------------------------------------
  auto* sc_bench = app.add_subcommand("bench", "Swiss-roll solver benchmark");
  SwissRollBenchConfig bench;
  std::string bench_out = "bench";
  sc_bench->add_option("--n", bench.n, "Swiss roll points")->capture_default_str();
  sc_bench->add_option("--dims", bench.dims, "Embedding dimension")->capture_default_str();
  sc_bench->add_option("--sweeps", bench.sweeps, "Adjustment sweeps")->capture_default_str();
  sc_bench->add_option("--repeats", bench.repeats, "Independent repeats")->capture_default_str();
  sc_bench->add_option("--knn", bench.knn, "Geodesic graph neighbors")->capture_default_str();
  sc_bench->add_option("--noise", bench.noise, "Swiss roll jitter")->capture_default_str();
  sc_bench->add_option("--seed", bench.seed, "Base seed")->capture_default_str();
  sc_bench->add_option("--out", bench_out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sc_roll) {
      const PointCloud cloud = swiss_roll(roll);
      save_points(roll_out, cloud.points);
      std::printf("wrote %zu points to %s\n", cloud.size(), roll_out.c_str());
      return kExitOk;
    }

    if (*sc_dist) {
      DistanceMatrix result;
      if (!dist_points.empty()) {
        const Matrix pts = load_points(dist_points);
        if (dist_measure == "geodesic") {
          result = geodesic_distance_matrix(PointCloud{pts}, dist_knn);
        } else if (dist_measure == "euclidean") {
          result = DistanceMatrix::from_points(pts);
        } else {
          throw InvalidArgument("distmat: point measure must be euclidean or geodesic");
        }
      } else if (!dist_images.empty()) {
        const LabeledImageSet data = load_image_dataset(dist_images, layout_from(dist_layout));
        if (dist_measure == "euclidean") {
          result = build_distance_matrix(data.images, euclidean_distance);
        } else if (dist_measure == "imed") {
          const ImedParams params{dist_sigma};
          std::vector<GrayImage> st(data.size());
          for (std::size_t i = 0; i < data.size(); ++i)
            st[i] = standardizing_transform(data.images[i], params);
          result = build_distance_matrix(st, euclidean_distance);
        } else if (dist_measure == "spm1" || dist_measure == "spm2") {
          if (dist_vocab.empty())
            throw InvalidArgument("distmat: --vocab is required for spm measures");
          const Vocabulary vocab = Vocabulary::load_csv(dist_vocab);
          const auto pyramids = pyramids_for(data, vocab, dist_spm);
          const bool spm2 = dist_measure == "spm2";
          result = build_distance_matrix(
              pyramids, [&](const PyramidVector& a, const PyramidVector& b) {
                const double k = pyramid_match_similarity(a, b);
                return spm2 ? spm2_distance(k, dist_epsilon) : spm1_distance(k);
              });
        } else {
          throw InvalidArgument("distmat: image measure must be euclidean|imed|spm1|spm2");
        }
      } else {
        throw InvalidArgument("distmat: provide --points or --images");
      }
      result.save_csv(dist_out);
      std::printf("wrote %zux%zu distance matrix to %s\n", result.size(), result.size(),
                  dist_out.c_str());
      return kExitOk;
    }

    if (*sc_fit) {
      const DistanceMatrix d = DistanceMatrix::load_csv(fit_dist);
      Embedding embedding;
      RunTrace trace;
      if (fit_algo == "ilma") {
        IlmaOptions opts;
        opts.max_adjustment_iterations = fit_sweeps;
        opts.relative_stress_tolerance = fit_tolerance;
        opts.init_strategy = strategy_from(fit_strategy);
        opts.seed = fit_seed;
        std::tie(embedding, trace) = ilma_fit(d, fit_dims, opts);
      } else if (fit_algo == "smacof") {
        SmacofOptions opts;
        opts.max_iterations = fit_sweeps * d.size();
        opts.relative_stress_tolerance = fit_tolerance;
        opts.seed = fit_seed;
        std::tie(embedding, trace) = smacof_fit(d, fit_dims, opts);
      } else {
        throw InvalidArgument("fit: --algo must be ilma or smacof");
      }
      embedding.save_csv(fit_out);
      if (!fit_trace.empty()) trace.save_csv(fit_trace);
      std::printf("fit %zu items to %zu dims: raw stress %.6g, stress-1 %.6g -> %s\n",
                  d.size(), fit_dims, embedding.fit_raw_stress, embedding.fit_stress1,
                  fit_out.c_str());
      return kExitOk;
    }

    if (*sc_encode) {
      const Embedding embedding = Embedding::load_csv(enc_embedding);
      const Matrix rows = read_csv_auto(enc_dists).values;
      if (rows.cols() != embedding.codes.rows())
        throw DimensionError("encode: distance rows must have one column per training item");
      Matrix codes(rows.rows(), embedding.dimension);
      for (std::size_t i = 0; i < rows.rows(); ++i) {
        const auto code = encode_new(embedding, rows.row(i));
        for (std::size_t j = 0; j < code.size(); ++j) codes(i, j) = code[j];
      }
      save_points(enc_out, codes);
      std::printf("encoded %zu items -> %s\n", rows.rows(), enc_out.c_str());
      return kExitOk;
    }

    if (*sc_vocab) {
      const LabeledImageSet data = load_image_dataset(vb_images, layout_from(vb_layout));
      std::vector<LocalDescriptor> pooled;
      for (const auto& img : data.images) {
        const auto descs = dense_descriptors(img, vb_params.step, vb_params.patch);
        pooled.insert(pooled.end(), descs.begin(), descs.end());
      }
      Rng rng(vb_seed);
      const Vocabulary vocab = build_vocabulary(descriptor_matrix(pooled), vb_size, rng);
      vocab.save_csv(vb_out);

      nlohmann::json sidecar;
      sidecar["vocab_size"] = vb_size;
      sidecar["step"] = vb_params.step;
      sidecar["patch"] = vb_params.patch;
      sidecar["seed"] = vb_seed;
      sidecar["training_set_hash"] = hash_hex(dataset_content_hash(data));
      std::ofstream side(std::filesystem::path(vb_out).replace_extension(".json"));
      side << sidecar.dump(2) << "\n";
      std::printf("trained %zu-word vocabulary on %zu descriptors -> %s\n", vb_size,
                  pooled.size(), vb_out.c_str());
      return kExitOk;
    }

    if (*sc_vectors) {
      const LabeledImageSet data = load_image_dataset(vc_images, layout_from(vc_layout));
      const Vocabulary vocab = Vocabulary::load_csv(vc_vocab);
      const auto pyramids = pyramids_for(data, vocab, vc_params);
      save_pyramid_batch(vc_out, pyramids);
      std::printf("wrote %zu pyramid vectors of length %zu -> %s\n", pyramids.size(),
                  pyramids.front().weighted_histogram.size(), vc_out.c_str());
      return kExitOk;
    }

    if (*sc_eval) {
      ExperimentConfig config =
          eval_config_file.empty() ? ExperimentConfig() : ExperimentConfig::load(eval_config_file);
      // flags override file values
      if (sc_eval->count("--method") || eval_config_file.empty())
        config.method = feature_method_from_string(eval_method);
      if (sc_eval->count("--seed")) config.seed = eval_config.seed;
      if (sc_eval->count("--folds")) config.folds = eval_config.folds;
      if (sc_eval->count("--sigma")) config.imed_sigma = eval_config.imed_sigma;
      if (sc_eval->count("--vocab-size")) config.vocab_size = eval_config.vocab_size;
      if (sc_eval->count("--levels")) config.levels = eval_config.levels;
      if (sc_eval->count("--epsilon")) config.spm_epsilon = eval_config.spm_epsilon;
      if (sc_eval->count("--max-sweeps")) config.mds_max_sweeps = eval_config.mds_max_sweeps;
      if (!eval_images.empty()) config.dataset_root = eval_images;
      if (sc_eval->count("--layout") || eval_config_file.empty())
        config.layout = layout_from(eval_layout);
      if (!eval_cache.empty()) config.cache_dir = eval_cache;
      if (!eval_out_root.empty()) config.output_root = eval_out_root;
      if (!eval_m_list.empty()) {
        config.m_values.clear();
        std::stringstream ss(eval_m_list);
        std::string tok;
        while (std::getline(ss, tok, ','))
          config.m_values.push_back(static_cast<std::size_t>(std::stoul(tok)));
      }

      const ExperimentResult result = run_experiment(config);
      std::printf("run directory: %s\n", result.run_dir.string().c_str());
      for (const auto& sweep : result.sweeps) {
        std::printf("m=%zu: precision %.4f recall %.4f accuracy %.4f (%zu failed folds)\n",
                    sweep.m, sweep.report.mean_precision, sweep.report.mean_recall,
                    sweep.report.mean_accuracy, sweep.report.failed_folds);
      }
      return kExitOk;
    }

    if (*sc_bench) {
      const SwissRollBenchResult result = bench_swissroll(bench);
      write_bench_csvs(result, bench_out);
      std::printf("bench artifacts in %s\n", bench_out.c_str());
      for (const auto& [name, stresses] : result.final_stress) {
        double mean = 0.0;
        for (double s : stresses) mean += s;
        mean /= static_cast<double>(stresses.size());
        std::printf("%-10s mean final raw stress %.6g over %zu runs\n", name.c_str(), mean,
                    stresses.size());
      }
      return kExitOk;
    }
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
