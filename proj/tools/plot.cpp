#include "plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "a52/errors.hpp"

namespace a52::cli {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double to_number(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ParseError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Degenerate or empty ranges are widened so the mapping stays finite.
  void settle() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    } else if (hi - lo <= 1e-300) {
      const double pad = std::max(1.0, std::abs(lo)) * 0.5;
      lo -= pad;
      hi += pad;
    }
  }
};

constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

}  // namespace

CsvTable CsvTable::read(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty trajectory file");
  for (auto c : split(line)) t.columns.emplace_back(trim(c));
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.columns.size()) {
      throw ParseError("row " + std::to_string(t.rows.size() + 1) + " has " + std::to_string(cells.size()) +
                       " cells, header has " + std::to_string(t.columns.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto c : cells) row.push_back(to_number(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ParseError("no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

void write_svg(std::ostream& os, const CsvTable& table, const PlotSpec& spec) {
  const std::size_t xi = table.column(spec.x);
  std::vector<std::size_t> yi;
  for (const auto& y : spec.y) yi.push_back(table.column(y));
  if (yi.empty()) throw ParseError("no y columns selected");

  constexpr double width = 800, height = 500;
  constexpr double left = 80, right = 150, top = 40, bottom = 60;
  const double pw = width - left - right;
  const double ph = height - top - bottom;

  Range xr, yr;
  for (const auto& row : table.rows) {
    xr.add(row[xi]);
    for (std::size_t k : yi) yr.add(row[k]);
  }
  xr.settle();
  yr.settle();
  const auto sx = [&](double v) { return left + (v - xr.lo) / (xr.hi - xr.lo) * pw; };
  const auto sy = [&](double v) { return top + ph - (v - yr.lo) / (yr.hi - yr.lo) * ph; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"16\">" << escape(spec.title) << "</text>\n";
  }
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int ticks = 5;
  for (int k = 0; k <= ticks; ++k) {
    const double fx = xr.lo + (xr.hi - xr.lo) * k / ticks;
    const double fy = yr.lo + (yr.hi - yr.lo) * k / ticks;
    os << "<line x1=\"" << sx(fx) << "\" y1=\"" << top + ph << "\" x2=\"" << sx(fx) << "\" y2=\"" << top + ph + 5
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << sx(fx) << "\" y=\"" << top + ph + 20
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(fx) << "</text>\n"
       << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(fy) << "\" x2=\"" << left << "\" y2=\"" << sy(fy)
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << left - 8 << "\" y=\"" << sy(fy) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(fy) << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(spec.x) << "</text>\n";

  for (std::size_t s = 0; s < yi.size(); ++s) {
    const char* color = palette[s % std::size(palette)];
    std::ostringstream pts;
    std::size_t n = 0;
    for (const auto& row : table.rows) {
      if (!std::isfinite(row[xi]) || !std::isfinite(row[yi[s]])) continue;
      pts << (n ? " " : "") << sx(row[xi]) << ',' << sy(row[yi[s]]);
      ++n;
    }
    if (n >= 2) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts.str()
         << "\"/>\n";
    } else if (n == 1) {
      for (const auto& row : table.rows) {
        if (std::isfinite(row[xi]) && std::isfinite(row[yi[s]])) {
          os << "<circle cx=\"" << sx(row[xi]) << "\" cy=\"" << sy(row[yi[s]]) << "\" r=\"4\" fill=\"" << color
             << "\"/>\n";
        }
      }
    }
    const double ly = top + 20 + 20.0 * static_cast<double>(s);
    os << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 40 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << left + pw + 46 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"12\">"
       << escape(spec.y[s]) << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace a52::cli
