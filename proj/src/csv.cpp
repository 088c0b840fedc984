#include "apchemo/csv.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace apchemo {

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
    : CsvWriter(path, std::vector<std::string>(header.begin(), header.end())) {}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_escape(header[i]);
  }
  out_ << "\r\n";
}

void CsvWriter::row(std::initializer_list<CsvCell> cells) { write_cells(cells.begin(), cells.size()); }

void CsvWriter::row(const std::vector<CsvCell>& cells) { write_cells(cells.data(), cells.size()); }

void CsvWriter::write_cells(const CsvCell* first, std::size_t count) {
  if (count != columns_) throw std::invalid_argument("CsvWriter: row width differs from header");
  for (std::size_t i = 0; i < count; ++i) {
    if (i) out_ << ',';
    const CsvCell& cell = first[i];
    if (const auto* d = std::get_if<double>(&cell)) out_ << format_double(*d);
    else if (const auto* n = std::get_if<long long>(&cell)) out_ << *n;
    else out_ << csv_escape(std::get<std::string>(cell));
  }
  out_ << "\r\n";
}

CsvTable read_numeric_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (first) {
      table.header = std::move(fields);
      first = false;
      continue;
    }
    std::vector<double> values;
    for (const auto& f : fields) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw std::runtime_error("non-numeric field '" + f + "' in " + path.string());
      }
      values.push_back(v);
    }
    table.rows.push_back(std::move(values));
  }
  return table;
}

}  // namespace apchemo
