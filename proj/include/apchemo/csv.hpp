#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace apchemo {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// RFC 4180 quoting: fields with comma, quote or line break are quoted.
std::string csv_escape(std::string_view field);

using CsvCell = std::variant<double, long long, std::string>;

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(std::initializer_list<CsvCell> cells);
  void row(const std::vector<CsvCell>& cells);
  void flush() { out_.flush(); }

 private:
  void write_cells(const CsvCell* first, std::size_t count);

  std::ofstream out_;
  std::size_t columns_;
};

/// Reads a CSV written by CsvWriter into a header and numeric rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_numeric_csv(const std::filesystem::path& path);

}  // namespace apchemo
