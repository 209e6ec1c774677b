#include "hexlift/csv.hpp"

#include "hexlift/scaling.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hexlift::io {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_double(const std::string& token, double& value) {
  if (token.empty()) return false;
  const char* first = token.data();
  const char* last = first + token.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

CsvTable parse_csv(std::istream& in, const std::string& source) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line)) break;
  }
  if (blank(line)) throw std::runtime_error(source + ": missing header row (file is empty)");
  table.header = split(line);
  {
    bool numeric = true;
    double ignored = 0.0;
    for (const auto& name : table.header) numeric = numeric && parse_double(name, ignored);
    if (numeric) throw std::runtime_error(source + ": missing header row (line " + std::to_string(line_no) + " is numeric)");
  }

  const std::size_t cols = table.header.size();
  std::vector<double> cells;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto tokens = split(line);
    if (tokens.size() != cols)
      throw std::runtime_error(source + ": ragged row at line " + std::to_string(line_no) + " (" +
                               std::to_string(tokens.size()) + " fields, header has " + std::to_string(cols) + ")");
    for (std::size_t j = 0; j < cols; ++j) {
      double v = 0.0;
      if (!parse_double(tokens[j], v))
        throw std::runtime_error(source + ": non-numeric value '" + tokens[j] + "' at row " + std::to_string(rows + 1) +
                                 ", column " + std::to_string(j + 1) + " ('" + table.header[j] + "')");
      if (!std::isfinite(v))
        throw std::runtime_error(source + ": non-finite value '" + tokens[j] + "' at row " + std::to_string(rows + 1) +
                                 ", column " + std::to_string(j + 1) + " ('" + table.header[j] + "')");
      cells.push_back(v);
    }
    ++rows;
  }

  table.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cells[i * cols + j];
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open file");
  return parse_csv(in, path.string());
}

Dataset load_dataset(const std::filesystem::path& path) {
  CsvTable table = read_csv(path);
  Dataset data{std::move(table.values), std::move(table.header)};
  try {
    validate_dataset(data);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  return data;
}

RawLayout load_layout(const std::filesystem::path& path) {
  CsvTable table = read_csv(path);
  if (table.values.cols() != 2)
    throw std::runtime_error(path.string() + ": a layout needs exactly 2 columns (emb1,emb2), found " +
                             std::to_string(table.values.cols()));
  RawLayout raw{table.values, path.stem().string()};
  try {
    validate_layout(raw);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  return raw;
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header, const Matrix& values) {
  if (static_cast<Eigen::Index>(header.size()) != values.cols())
    throw std::invalid_argument("csv: header does not match column count");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) out << (j ? "," : "") << format_real(values(i, j));
    out << '\n';
  }
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace hexlift::io
