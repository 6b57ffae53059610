#include "a52/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "a52/errors.hpp"

namespace a52 {

ExactRational::ExactRational(long long v) : q_(mpz_class(std::to_string(v))) {}

ExactRational::ExactRational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("ExactRational: zero denominator");
  q_ = mpq_class(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q_.canonicalize();
}

ExactRational::ExactRational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

ExactRational& ExactRational::operator/=(const ExactRational& o) {
  if (o.is_zero()) throw std::domain_error("ExactRational: division by zero");
  q_ /= o.q_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Optional sign followed by digits.
bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return all_digits(s);
}

mpz_class parse_integer(std::string_view s) {
  std::string digits(s);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

ExactRational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    const std::string_view exp_part = s.substr(e + 1);
    if (!is_integer_literal(exp_part) || exp_part.size() > 6) {
      throw ParseError("not a number: '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_part));
    s = s.substr(0, e);
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) ||
      (!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part))) {
    throw ParseError("not a number: '" + std::string(text) + "'");
  }
  mpz_class mantissa(std::string(int_part) + std::string(frac_part), 10);
  exponent -= static_cast<long>(frac_part.size());
  mpq_class q(mantissa);
  if (exponent >= 0) {
    q *= pow10(static_cast<unsigned long>(exponent));
  } else {
    q /= pow10(static_cast<unsigned long>(-exponent));
  }
  if (negative) q = -q;
  return ExactRational(q);
}

}  // namespace

ExactRational ExactRational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !all_digits(den)) {
      throw ParseError("not a rational: '" + std::string(text) + "'");
    }
    mpz_class d = parse_integer(den);
    if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    return ExactRational(mpq_class(parse_integer(num), d));
  }
  if (is_integer_literal(text)) return ExactRational(mpq_class(parse_integer(text)));
  return parse_decimal(text);
}

std::string ExactRational::to_string() const { return q_.get_str(10); }

}  // namespace a52
