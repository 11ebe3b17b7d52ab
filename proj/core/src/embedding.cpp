#include "mdsfeat/embedding.hpp"

#include "mdsfeat/csv.hpp"
#include "mdsfeat/errors.hpp"
#include "mdsfeat/stress.hpp"

namespace mdsfeat {

void Embedding::save_csv(const std::filesystem::path& path) const {
  std::vector<std::string> header(dimension);
  for (std::size_t j = 0; j < dimension; ++j) header[j] = "dim" + std::to_string(j);
  write_csv(path, codes, header);
}

Embedding Embedding::load_csv(const std::filesystem::path& path) {
  CsvTable table = read_csv(path, /*expect_header=*/true);
  Embedding e;
  e.codes = std::move(table.values);
  e.dimension = e.codes.cols();
  if (!e.codes.all_finite()) throw DataError("Embedding::load_csv: non-finite codes");
  return e;
}

void Embedding::refresh_stress(const DistanceMatrix& d) {
  fit_raw_stress = raw_stress(d, codes);
  fit_stress1 = stress1(d, codes);
}

void RunTrace::save_csv(const std::filesystem::path& path) const {
  Matrix m(samples.size(), 3);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    m(i, 0) = static_cast<double>(samples[i].iteration);
    m(i, 1) = samples[i].raw_stress;
    m(i, 2) = samples[i].elapsed_seconds;
  }
  write_csv(path, m, {"iteration", "raw_stress", "elapsed_seconds"});
}

RunTrace RunTrace::load_csv(const std::filesystem::path& path) {
  CsvTable table = read_csv(path, /*expect_header=*/true);
  if (table.values.cols() != 3) throw DataError("RunTrace::load_csv: expected 3 columns");
  RunTrace t;
  for (std::size_t i = 0; i < table.values.rows(); ++i) {
    t.samples.push_back({static_cast<std::size_t>(table.values(i, 0)), table.values(i, 1),
                         table.values(i, 2)});
  }
  return t;
}

void RunTrace::add(std::size_t iteration, double stress, double elapsed) {
  if (!samples.empty() && elapsed <= samples.back().elapsed_seconds) {
    elapsed = samples.back().elapsed_seconds + 1e-9;
  }
  samples.push_back({iteration, stress, elapsed});
}

} // namespace mdsfeat
