#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "svmix/errors.hpp"

namespace svmix::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\"");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file '" + path.string() + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    lines.push_back(line);
  }
  return lines;
}

[[noreturn]] void bad_cell(const std::filesystem::path& path, std::size_t row,
                           const std::string& column, const std::string& cell) {
  throw DataError("'" + path.string() + "': row " + std::to_string(row) + ", column '" + column +
                  "': value '" + cell + "' is not a finite number");
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t Table::column_index(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DataError("no column named '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> Table::column(std::string_view name) const {
  const std::size_t j = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[j]);
  return out;
}

Table read_table(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw DataError("'" + path.string() + "' is empty");
  Table t;
  t.header = split(lines[0]);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> cells = split(lines[i]);
    if (cells.size() != t.header.size()) {
      throw DataError("'" + path.string() + "': row " + std::to_string(i) + " has " +
                      std::to_string(cells.size()) + " fields, header has " +
                      std::to_string(t.header.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (cells[j] == "NA") {
        row[j] = std::nan("");
        continue;
      }
      if (!parse_number(cells[j], row[j]) || !std::isfinite(row[j])) {
        bad_cell(path, i, t.header[j], cells[j]);
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<double> read_series(const std::filesystem::path& path, const std::string& column) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw DataError("data file '" + path.string() + "' is empty");
  std::vector<std::string> first = split(lines[0]);
  double probe = 0.0;
  const bool has_header = std::any_of(first.begin(), first.end(), [&](const std::string& c) {
    return !parse_number(c, probe) && c != "nan" && c != "NaN" && c != "inf" && c != "-inf";
  });

  std::size_t col = 0;
  std::string col_name = "1";
  if (!column.empty()) {
    if (!has_header) throw DataError("'" + path.string() + "' has no header; cannot select '" + column + "'");
    const auto it = std::find(first.begin(), first.end(), column);
    if (it == first.end()) {
      throw DataError("'" + path.string() + "' has no column named '" + column + "'");
    }
    col = static_cast<std::size_t>(it - first.begin());
    col_name = column;
  } else if (first.size() != 1) {
    throw DataError("'" + path.string() + "' has " + std::to_string(first.size()) +
                    " columns; name one with --column");
  } else if (has_header) {
    col_name = first[0];
  }

  std::vector<double> y;
  const std::size_t start = has_header ? 1 : 0;
  for (std::size_t i = start; i < lines.size(); ++i) {
    const std::vector<std::string> cells = split(lines[i]);
    const std::size_t row = i - start + 1;
    if (col >= cells.size()) {
      throw DataError("'" + path.string() + "': row " + std::to_string(row) + " is missing column '" +
                      col_name + "'");
    }
    double v = 0.0;
    if (!parse_number(cells[col], v) || !std::isfinite(v)) bad_cell(path, row, col_name, cells[col]);
    y.push_back(v);
  }
  if (y.empty()) throw DataError("data file '" + path.string() + "' has no observations");
  return y;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw DataError("cannot write '" + path.string() + "'");
  for (std::size_t j = 0; j < header.size(); ++j) out_ << (j ? "," : "") << header[j];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t j = 0; j < values.size(); ++j) out_ << (j ? "," : "") << format_double(values[j]);
  out_ << '\n';
}

void CsvWriter::row(const std::string& label, const std::vector<double>& values) {
  out_ << label;
  for (double v : values) out_ << ',' << format_double(v);
  out_ << '\n';
}

void CsvWriter::cells(const std::vector<std::string>& values) {
  for (std::size_t j = 0; j < values.size(); ++j) out_ << (j ? "," : "") << values[j];
  out_ << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw DataError("failed writing '" + path_.string() + "'");
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw DataError("cannot create output directory '" + dir.string() + "': " + ec.message());
  }
}

}  // namespace svmix::cli
