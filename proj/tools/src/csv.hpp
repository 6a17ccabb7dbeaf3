#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace svmix::cli {

// %.17g; round-trips every finite double.
std::string format_double(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(std::string_view name) const;  // throws DataError
  std::vector<double> column(std::string_view name) const;
};

// Comma-separated file with a header row. Every cell must parse as a finite
// number or be NA (read as NaN); otherwise DataError names the file, row and
// column.
Table read_table(const std::filesystem::path& path);

// A single series from a delimited file. With an empty column name the file
// must hold one column, with or without a header.
std::vector<double> read_series(const std::filesystem::path& path, const std::string& column);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  // Label in the first column, then numbers.
  void row(const std::string& label, const std::vector<double>& values);
  void cells(const std::vector<std::string>& values);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

void ensure_directory(const std::filesystem::path& dir);

}  // namespace svmix::cli
