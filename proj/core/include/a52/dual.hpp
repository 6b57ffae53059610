#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "a52/float64.hpp"
#include "a52/rational.hpp"

namespace a52 {

/// Forward-mode dual number over a base field B: a value together with a
/// vector of partial derivatives.
///
/// An empty partial vector denotes a constant, so literals and parameters
/// mix freely with seeded variables without carrying zero vectors around.
/// Over ExactRational the product and quotient rules are applied exactly.
template <class B>
class Dual {
 public:
  Dual() : value_(0) {}
  Dual(int v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Dual(B v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Dual(B v, std::vector<B> partials) : value_(std::move(v)), partials_(std::move(partials)) {}

  /// Independent variable number `index` out of `count`.
  static Dual variable(B v, std::size_t index, std::size_t count) {
    std::vector<B> p(count, B(0));
    p.at(index) = B(1);
    return Dual(std::move(v), std::move(p));
  }

  const B& value() const noexcept { return value_; }
  const std::vector<B>& partials() const noexcept { return partials_; }
  /// Partial in coordinate k; zero for constants.
  B partial(std::size_t k) const { return k < partials_.size() ? partials_[k] : B(0); }

  Dual& operator+=(const Dual& o) {
    value_ += o.value_;
    axpy(B(1), o.partials_);
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    value_ -= o.value_;
    axpy(B(-1), o.partials_);
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    if (&o == this) return *this *= Dual(o);
    // (u v)' = u' v + u v'
    for (auto& d : partials_) d *= o.value_;
    axpy(value_, o.partials_);
    value_ *= o.value_;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    if (&o == this) return *this /= Dual(o);
    // (u / v)' = (u' v - u v') / v^2 = (u' - (u/v) v') / v
    value_ /= o.value_;
    axpy(-value_, o.partials_);
    for (auto& d : partials_) d /= o.value_;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend Dual operator-(Dual a) {
    a.value_ = -a.value_;
    for (auto& d : a.partials_) d = -d;
    return a;
  }

  // Equality compares values and all partials, padding constants with zeros.
  friend bool operator==(const Dual& a, const Dual& b) {
    if (!(a.value_ == b.value_)) return false;
    const std::size_t n = std::max(a.partials_.size(), b.partials_.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (!(a.partial(k) == b.partial(k))) return false;
    }
    return true;
  }

  friend std::ostream& operator<<(std::ostream& os, const Dual& d) {
    os << d.value_ << " [";
    for (std::size_t k = 0; k < d.partials_.size(); ++k) os << (k ? ", " : "") << d.partials_[k];
    return os << ']';
  }

 private:
  // partials_ += s * other
  void axpy(const B& s, const std::vector<B>& other) {
    if (other.empty()) return;
    if (partials_.size() < other.size()) partials_.resize(other.size(), B(0));
    for (std::size_t k = 0; k < other.size(); ++k) partials_[k] += s * other[k];
  }

  B value_;
  std::vector<B> partials_;
};

template <class B>
bool is_zero(const Dual<B>& d) {
  return is_zero(d.value());
}

}  // namespace a52
