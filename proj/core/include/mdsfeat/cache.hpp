#pragma once

#include "mdsfeat/matrix.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace mdsfeat {

/// Disk cache for measured distance/similarity matrices, keyed by a string
/// the caller builds from (dataset hash, measure name, parameters). Each
/// entry is a CSV matrix plus a JSON sidecar recording the parameters and
/// the matrix content hash. An empty directory disables the cache.
class MatrixCache {
public:
  MatrixCache() = default;
  explicit MatrixCache(std::filesystem::path dir);

  bool enabled() const { return !dir_.empty(); }

  std::optional<Matrix> load(const std::string& key) const;
  void store(const std::string& key, const Matrix& m,
             const std::map<std::string, std::string>& params) const;

private:
  std::filesystem::path dir_;
};

} // namespace mdsfeat
