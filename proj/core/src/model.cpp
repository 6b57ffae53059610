#include "a52/model.hpp"

#include <charconv>
#include <system_error>

namespace a52 {

std::string format_float(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::string format_scalar(const ExactRational& r) { return r.to_string(); }
std::string format_scalar(double v) { return format_float(v); }

std::vector<ExactRational> parse_rational_list(std::string_view csv) {
  std::vector<ExactRational> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = csv.find(',', start);
    out.push_back(ExactRational::parse(csv.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_rational_list(const std::vector<ExactRational>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += values[i].to_string();
  }
  return s;
}

namespace {

std::vector<ExactRational> parse_exactly(std::string_view csv, std::size_t n, const char* what) {
  auto v = parse_rational_list(csv);
  if (v.size() != n) {
    throw ParseError(std::string(what) + " needs " + std::to_string(n) + " comma-separated values, got " +
                     std::to_string(v.size()));
  }
  return v;
}

}  // namespace

FState<ExactRational> parse_fstate(std::string_view csv) {
  auto v = parse_exactly(csv, 6, "f-chart state");
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

QPState<ExactRational> parse_qpstate(std::string_view csv) {
  auto v = parse_exactly(csv, 5, "qp-chart state (q1,p1,q2,p2,T)");
  return {v[0], v[1], v[2], v[3], v[4]};
}

Parameters<ExactRational> parse_parameters(std::string_view csv, ParameterMode mode) {
  auto v = parse_exactly(csv, 4, "alpha");
  return make_parameters(v[0], v[1], v[2], v[3], mode);
}

}  // namespace a52
