#include "mdsfeat/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mdsfeat/errors.hpp"

namespace mdsfeat {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const Matrix& values,
               const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw DataError("write_csv: cannot open " + path.string());
  if (!header.empty()) {
    if (header.size() != values.cols())
      throw DimensionError("write_csv: header length does not match column count");
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (j) out << ',';
      out << header[j];
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < values.rows(); ++i) {
    for (std::size_t j = 0; j < values.cols(); ++j) {
      if (j) out << ',';
      out << format_value(values(i, j));
    }
    out << '\n';
  }
  if (!out) throw DataError("write_csv: write failed for " + path.string());
}

namespace {

bool parse_row(const std::string& line, std::vector<double>& row) {
  row.clear();
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) comma = line.size();
    std::size_t begin = pos, end = comma;
    while (begin < end && std::isspace(static_cast<unsigned char>(line[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(line[end - 1]))) --end;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data() + begin, line.data() + end, v);
    if (ec != std::errc() || ptr != line.data() + end || begin == end) return false;
    row.push_back(v);
    if (comma == line.size()) break;
    pos = comma + 1;
  }
  return true;
}

std::vector<std::string> split_header(const std::string& line) {
  std::vector<std::string> cols;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cols.push_back(cell);
  return cols;
}

CsvTable read_csv_impl(const std::filesystem::path& path, int header_mode) {
  std::ifstream in(path);
  if (!in) throw DataError("read_csv: cannot open " + path.string());

  CsvTable table;
  std::vector<double> flat;
  std::vector<double> row;
  std::size_t cols = 0, rows = 0;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      const bool numeric = parse_row(line, row);
      const bool as_header = header_mode == 1 || (header_mode == 2 && !numeric);
      if (as_header) {
        table.header = split_header(line);
        continue;
      }
      if (!numeric) throw DataError("read_csv: non-numeric data in " + path.string() + ": " + line);
    } else if (!parse_row(line, row)) {
      throw DataError("read_csv: non-numeric data in " + path.string() + ": " + line);
    }
    if (cols == 0) cols = row.size();
    if (row.size() != cols)
      throw DataError("read_csv: ragged row in " + path.string() + " (expected " +
                      std::to_string(cols) + " columns, got " + std::to_string(row.size()) + ")");
    flat.insert(flat.end(), row.begin(), row.end());
    ++rows;
  }
  if (!table.header.empty() && cols != 0 && table.header.size() != cols)
    throw DataError("read_csv: header width does not match data in " + path.string());
  table.values = Matrix(rows, cols, std::move(flat));
  return table;
}

} // namespace

CsvTable read_csv(const std::filesystem::path& path, bool expect_header) {
  return read_csv_impl(path, expect_header ? 1 : 0);
}

CsvTable read_csv_auto(const std::filesystem::path& path) { return read_csv_impl(path, 2); }

} // namespace mdsfeat
