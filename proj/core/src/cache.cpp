#include "mdsfeat/cache.hpp"

#include <fstream>

#include <json.hpp>

#include "mdsfeat/csv.hpp"
#include "mdsfeat/errors.hpp"
#include "mdsfeat/hash.hpp"

namespace mdsfeat {

MatrixCache::MatrixCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::optional<Matrix> MatrixCache::load(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  const auto csv = dir_ / (key + ".csv");
  const auto sidecar = dir_ / (key + ".json");
  if (!std::filesystem::exists(csv) || !std::filesystem::exists(sidecar)) return std::nullopt;

  std::ifstream in(sidecar);
  nlohmann::json meta;
  try {
    in >> meta;
  } catch (...) {
    return std::nullopt;
  }
  const auto recorded = meta.value("content_hash", std::string());
  if (recorded != hash_hex(hash_file(csv))) return std::nullopt; // stale or corrupt

  try {
    return read_csv(csv, /*expect_header=*/false).values;
  } catch (const DataError&) {
    return std::nullopt;
  }
}

void MatrixCache::store(const std::string& key, const Matrix& m,
                        const std::map<std::string, std::string>& params) const {
  if (!enabled()) return;
  const auto csv = dir_ / (key + ".csv");
  const auto sidecar = dir_ / (key + ".json");
  write_csv(csv, m);

  nlohmann::json meta;
  meta["key"] = key;
  meta["rows"] = m.rows();
  meta["cols"] = m.cols();
  meta["content_hash"] = hash_hex(hash_file(csv));
  for (const auto& [k, v] : params) meta["params"][k] = v;
  std::ofstream out(sidecar);
  out << meta.dump(2) << "\n";
  if (!out) throw DataError("MatrixCache: cannot write " + sidecar.string());
}

} // namespace mdsfeat
