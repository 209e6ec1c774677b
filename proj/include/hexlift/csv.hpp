#pragma once

#include "hexlift/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace hexlift::io {

struct CsvTable {
  std::vector<std::string> header;
  Matrix values;
};

/// Numeric CSV with a header row. Throws std::runtime_error naming the file,
/// row and column for non-numeric or non-finite cells, ragged rows or a
/// missing header.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::istream& in, const std::string& source = "<stream>");

Dataset load_dataset(const std::filesystem::path& path);
RawLayout load_layout(const std::filesystem::path& path);

/// printf("%.17g"): 17 significant digits, reads back to the same double.
std::string format_real(double value);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const Matrix& values);

}  // namespace hexlift::io
