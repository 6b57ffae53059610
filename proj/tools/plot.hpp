#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace a52::cli {

/// Numeric table read from a trajectory file: one header row of column
/// names, then comma-separated numbers.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  static CsvTable read(std::istream& in);  // ParseError on malformed input
  std::size_t column(std::string_view name) const;  // ParseError if absent
};

struct PlotSpec {
  std::string x;
  std::vector<std::string> y;
  std::string title;
};

/// Static SVG line chart of the y columns against x. A single-row table
/// yields one marker per series.
void write_svg(std::ostream& os, const CsvTable& table, const PlotSpec& spec);

}  // namespace a52::cli
