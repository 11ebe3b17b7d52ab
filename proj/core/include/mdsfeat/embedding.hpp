#pragma once

#include "mdsfeat/distance_matrix.hpp"
#include "mdsfeat/matrix.hpp"

#include <filesystem>
#include <vector>

namespace mdsfeat {

/// Fitted MDS codes: one length-m row per item, plus the stress values at
/// the fitted configuration.
struct Embedding {
  Matrix codes; // N x m
  std::size_t dimension = 0;
  double fit_raw_stress = 0.0;
  double fit_stress1 = 0.0;

  /// CSV with header dim0..dim{m-1}, 17 significant digits per value.
  void save_csv(const std::filesystem::path& path) const;
  static Embedding load_csv(const std::filesystem::path& path);

  /// Recomputes both stress fields from `d` and `codes`.
  void refresh_stress(const DistanceMatrix& d);
};

struct TraceSample {
  std::size_t iteration = 0;
  double raw_stress = 0.0;
  double elapsed_seconds = 0.0;
};

/// Stress/time samples from one solver run: raw stress is non-increasing
/// and timestamps strictly increase.
struct RunTrace {
  std::vector<TraceSample> samples;

  /// CSV with columns iteration,raw_stress,elapsed_seconds.
  void save_csv(const std::filesystem::path& path) const;
  static RunTrace load_csv(const std::filesystem::path& path);

  /// Appends a sample, nudging the timestamp above the previous one when the
  /// clock did not visibly advance.
  void add(std::size_t iteration, double stress, double elapsed);
};

} // namespace mdsfeat
