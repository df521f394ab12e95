#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace specinv {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  /// Column by header name; throws when absent.
  const std::vector<double>& column(const std::string& name) const;
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Reads a numeric CSV with one header row. Blank lines and lines starting
/// with '#' are skipped.
CsvTable read_csv(const std::filesystem::path& path);

/// Writes columns under `header`. A non-empty `comment` becomes a leading
/// `# ...` line. Numbers use a fixed round-trippable format so identical
/// inputs give identical bytes.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns, const std::string& comment = {});

std::string format_number(double value);

}  // namespace specinv
