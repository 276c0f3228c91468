#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cqed {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

/// SVG line plot of the selected columns against the first column.
std::string render_svg(const CsvTable& table, const std::vector<std::string>& columns);

/// Reads csv_path and writes the plot to out_path. Throws ConfigError for
/// an empty or unknown column selection, IoError on I/O failure.
void render_plot(const std::filesystem::path& csv_path, const std::vector<std::string>& columns,
                 const std::filesystem::path& out_path);

}  // namespace cqed
