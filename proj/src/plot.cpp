#include "cqed/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "cqed/errors.hpp"

namespace cqed {
namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 480;
constexpr double kLeft = 70;
constexpr double kRight = 160;
constexpr double kTop = 20;
constexpr double kBottom = 50;
constexpr const char* kPalette[] = {"#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#000000",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#7f7f7f"};

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string num(double x, const char* format = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::optional<double> parse_cell(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0' || !std::isfinite(v)) return std::nullopt;
  return v;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) {
      lo = 0;
      hi = 1;
    } else if (hi - lo <= 0) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

// Tick positions at multiples of 1, 2 or 5 x 10^k inside [lo, hi].
std::vector<double> ticks(const Range& r) {
  const double raw = (r.hi - r.lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = 10 * mag;
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> out;
  for (double k = std::ceil(r.lo / step - 1e-9); k * step <= r.hi + step * 1e-9; k += 1) {
    out.push_back(std::abs(k) < 0.5 ? 0.0 : k * step);
  }
  return out;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path.string() + "' is empty");
  table.header = split_row(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    table.rows.push_back(split_row(line));
  }
  return table;
}

std::string render_svg(const CsvTable& table, const std::vector<std::string>& columns) {
  if (columns.empty()) throw ConfigError("plot: no columns selected");
  std::vector<std::size_t> index;
  for (const auto& name : columns) {
    auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) throw ConfigError("plot: missing column '" + name + "'");
    index.push_back(static_cast<std::size_t>(it - table.header.begin()));
  }

  Range xr, yr;
  for (const auto& row : table.rows) {
    if (auto x = parse_cell(row.empty() ? "" : row[0])) xr.include(*x);
    for (auto c : index)
      if (c < row.size())
        if (auto y = parse_cell(row[c])) yr.include(*y);
  }
  xr.pad();
  yr.pad();

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto sy = [&](double y) { return kTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth, "%.0f")
      << "\" height=\"" << num(kHeight, "%.0f") << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w)
      << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double fx : ticks(xr)) {
    svg << "<line x1=\"" << num(sx(fx)) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(sx(fx))
        << "\" y2=\"" << num(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(sx(fx)) << "\" y=\"" << num(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << num(fx, "%.3g") << "</text>\n";
  }
  for (double fy : ticks(yr)) {
    svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(sy(fy)) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(sy(fy)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy(fy) + 4)
        << "\" text-anchor=\"end\">" << num(fy, "%.3g") << "</text>\n";
  }
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 10)
      << "\" text-anchor=\"middle\">" << (table.header.empty() ? "" : table.header[0])
      << "</text>\n";

  for (std::size_t s = 0; s < index.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& row : table.rows) {
      auto x = parse_cell(row.empty() ? "" : row[0]);
      auto y = index[s] < row.size() ? parse_cell(row[index[s]]) : std::nullopt;
      if (!x || !y) continue;
      svg << (first ? "" : " ") << num(sx(*x)) << "," << num(sy(*y));
      first = false;
    }
    svg << "\"/>\n";
    const double ly = kTop + 14 + 18.0 * static_cast<double>(s);
    svg << "<line x1=\"" << num(kWidth - kRight + 12) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
        << num(kWidth - kRight + 36) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(kWidth - kRight + 42) << "\" y=\"" << num(ly) << "\">"
        << columns[s] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void render_plot(const std::filesystem::path& csv_path, const std::vector<std::string>& columns,
                 const std::filesystem::path& out_path) {
  if (columns.empty()) throw ConfigError("plot: no columns selected");
  const std::string svg = render_svg(read_csv(csv_path), columns);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + out_path.string() + "' for writing");
  out << svg;
  if (!out) throw IoError("failed writing '" + out_path.string() + "'");
}

}  // namespace cqed
