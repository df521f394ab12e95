#include "specinv/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "specinv/error.hpp"

namespace specinv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

}  // namespace

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return columns[i];
  }
  throw Error(ErrorCode::bad_input, "CSV has no column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cells = split(t);
    if (table.header.empty()) {
      table.header = cells;
      table.columns.assign(cells.size(), {});
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw Error(ErrorCode::bad_input, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                            std::to_string(table.header.size()) + " fields");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(cells[i], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cells[i].size()) {
        throw Error(ErrorCode::bad_input,
                    path.string() + ":" + std::to_string(line_no) + ": not a number: '" + cells[i] + "'");
      }
      table.columns[i].push_back(value);
    }
  }
  if (table.header.empty()) throw Error(ErrorCode::bad_input, path.string() + ": missing header");
  return table;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns, const std::string& comment) {
  if (header.size() != columns.size()) throw Error(ErrorCode::bad_input, "CSV header/column mismatch");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw Error(ErrorCode::bad_input, "CSV columns differ in length");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  if (!comment.empty()) out << "# " << comment << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << format_number(columns[i][r]);
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

}  // namespace specinv
