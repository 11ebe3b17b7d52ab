#pragma once

#include "mdsfeat/matrix.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace mdsfeat {

struct CsvTable {
  std::vector<std::string> header; // empty when the file has no header row
  Matrix values;
};

/// Writes one formatted value per cell with 17 significant digits
/// ("%.17g"), which round-trips doubles exactly.
std::string format_value(double v);

void write_csv(const std::filesystem::path& path, const Matrix& values,
               const std::vector<std::string>& header = {});

/// Reads a numeric CSV. When `expect_header` is true the first row is kept
/// as column names; otherwise every row must be numeric.
CsvTable read_csv(const std::filesystem::path& path, bool expect_header);

/// Detects a header: the file is read with a header row iff the first line
/// fails to parse fully as numbers.
CsvTable read_csv_auto(const std::filesystem::path& path);

} // namespace mdsfeat
