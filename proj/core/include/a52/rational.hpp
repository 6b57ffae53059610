#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace a52 {

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
///
/// Thin value wrapper around GMP's mpq_class. Every constructor
/// canonicalizes, and GMP's arithmetic keeps results canonical, so two
/// equal values always have identical numerator/denominator limbs.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  ExactRational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  ExactRational(long long v);  // NOLINT(google-explicit-constructor)
  ExactRational(std::int64_t num, std::int64_t den);
  explicit ExactRational(mpq_class q);

  /// Parses "p/q", "p", or a finite decimal such as "-0.125" or "1e-3".
  /// Throws ParseError on anything else (including a zero denominator).
  static ExactRational parse(std::string_view text);

  /// Canonical "p/q", or "p" when the denominator is 1.
  std::string to_string() const;
  double to_double() const { return q_.get_d(); }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const noexcept { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  ExactRational& operator+=(const ExactRational& o) { q_ += o.q_; return *this; }
  ExactRational& operator-=(const ExactRational& o) { q_ -= o.q_; return *this; }
  ExactRational& operator*=(const ExactRational& o) { q_ *= o.q_; return *this; }
  // Division by zero throws std::domain_error; generator code checks poles
  // before dividing, so this only fires on programming errors.
  ExactRational& operator/=(const ExactRational& o);

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
  friend ExactRational operator-(const ExactRational& a) { return ExactRational(mpq_class(-a.q_)); }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactRational& r) {
    return os << r.to_string();
  }

 private:
  mpq_class q_;
};

inline bool is_zero(const ExactRational& r) { return r.is_zero(); }
inline double to_double(const ExactRational& r) { return r.to_double(); }

}  // namespace a52
