#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "a52/dynamics.hpp"

namespace a52 {

enum class Generator { s0, s1, s2, s3, pi };

inline constexpr std::array<Generator, 5> all_generators{Generator::s0, Generator::s1, Generator::s2,
                                                         Generator::s3, Generator::pi};
inline constexpr std::array<Generator, 4> reflections{Generator::s0, Generator::s1, Generator::s2,
                                                      Generator::s3};

const char* name(Generator g);
Generator parse_generator(std::string_view tag);

/// Generators are applied left to right: "s2 s3" means s2 first, then s3.
using Word = std::vector<Generator>;

/// Whitespace-separated tags from {s0, s1, s2, s3, pi}; empty text is the
/// identity word.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

Word power(const Word& w, int m);

enum class Chart { f, qp };

template <Scalar S>
struct FPoint {
  FState<S> x;
  Parameters<S> a;
  static constexpr Chart chart = Chart::f;
  friend bool operator==(const FPoint&, const FPoint&) = default;
};

template <Scalar S>
struct QPPoint {
  QPState<S> x;
  Parameters<S> a;
  static constexpr Chart chart = Chart::qp;
  friend bool operator==(const QPPoint&, const QPPoint&) = default;
};

template <Scalar S>
using ChartPoint = std::variant<FPoint<S>, QPPoint<S>>;

/// The linear action on (alpha0, ..., alpha3); identical in both charts.
template <Scalar S>
Parameters<S> act_on_parameters(Generator g, const Parameters<S>& a) {
  switch (g) {
    case Generator::s0: return {-a.alpha0, a.alpha1, a.alpha2 + a.alpha0, a.alpha3};
    case Generator::s1: return {a.alpha0, -a.alpha1, a.alpha2 + a.alpha1, a.alpha3};
    case Generator::s2:
      return {a.alpha0 + a.alpha2, a.alpha1 + a.alpha2, -a.alpha2, a.alpha3 + S(2) * a.alpha2};
    case Generator::s3: return {a.alpha0, a.alpha1, a.alpha2 + a.alpha3, -a.alpha3};
    case Generator::pi: return {a.alpha1, a.alpha0, a.alpha2, a.alpha3};
  }
  return a;
}

namespace detail {
template <Scalar S>
void require_off_pole(const S& denominator, const char* divisor) {
  if (is_zero(denominator)) throw PoleHit(divisor);
}
}  // namespace detail

/// Birational action on the symmetric-form chart.
template <Scalar S>
FPoint<S> apply_generator(Generator g, const FPoint<S>& pt) {
  const auto& [f0, f1, f2, f3, g1, g2] = pt.x;
  const Parameters<S>& a = pt.a;
  FState<S> y = pt.x;
  switch (g) {
    case Generator::s0:
      detail::require_off_pole(f0, "f0");
      y.f2 = f2 + a.alpha0 * g2 / f0;
      y.g1 = g1 + a.alpha0 / f0;
      break;
    case Generator::s1:
      detail::require_off_pole(f1, "f1");
      y.f2 = f2 + a.alpha1 * g1 / f1;
      y.g2 = g2 + a.alpha1 / f1;
      break;
    case Generator::s2:
      detail::require_off_pole(f2, "f2");
      y.f0 = f0 - a.alpha2 * g2 / f2;
      y.f1 = f1 - a.alpha2 * g1 / f2;
      y.f3 = f3 - a.alpha2 * (g1 + g2) / f2;
      break;
    case Generator::s3:
      detail::require_off_pole(f3, "f3");
      y.f2 = f2 + a.alpha3 * (g1 + g2) / f3 + a.alpha3 * a.alpha3 / (f3 * f3);
      y.g1 = g1 + a.alpha3 / f3;
      y.g2 = g2 + a.alpha3 / f3;
      break;
    case Generator::pi:
      y = {f1, f0, f2, f3, g2, g1};
      break;
  }
  return {std::move(y), act_on_parameters(g, a)};
}

/// Birational action on the Hamiltonian chart. T is fixed by every generator.
template <Scalar S>
QPPoint<S> apply_generator(Generator g, const QPPoint<S>& pt) {
  const auto& [q1, p1, q2, p2, T] = pt.x;
  const Parameters<S>& a = pt.a;
  QPState<S> y = pt.x;
  switch (g) {
    case Generator::s0:
      detail::require_off_pole(p1, "p1");
      y.q1 = q1 + a.alpha0 / p1;
      break;
    case Generator::s1:
      detail::require_off_pole(p2, "p2");
      y.q2 = q2 + a.alpha1 / p2;
      break;
    case Generator::s2: {
      const S d = q1 * q2 + T;
      detail::require_off_pole(d, "q1q2+T");
      y.p1 = p1 - a.alpha2 * q2 / d;
      y.p2 = p2 - a.alpha2 * q1 / d;
      break;
    }
    case Generator::s3: {
      const S d = p1 + p2 - S(1);
      detail::require_off_pole(d, "p1+p2-1");
      y.q1 = q1 + a.alpha3 / d;
      y.q2 = q2 + a.alpha3 / d;
      break;
    }
    case Generator::pi:
      y = {q2, p2, q1, p1, T};
      break;
  }
  return {std::move(y), act_on_parameters(g, a)};
}

template <Scalar S>
FPoint<S> apply_generator_f(Generator g, const FState<S>& x, const Parameters<S>& a) {
  return apply_generator(g, FPoint<S>{x, a});
}

template <Scalar S>
QPPoint<S> apply_generator_qp(Generator g, const QPState<S>& x, const Parameters<S>& a) {
  return apply_generator(g, QPPoint<S>{x, a});
}

/// Applies w left to right. A pole at generator k is rethrown as PoleHit
/// with step() == k.
template <class Point>
Point apply_word(const Word& w, Point pt) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    try {
      pt = apply_generator(w[k], pt);
    } catch (const PoleHit& e) {
      throw PoleHit(e.divisor(), k);
    }
  }
  return pt;
}

template <Scalar S>
ChartPoint<S> apply_word(const Word& w, const ChartPoint<S>& pt) {
  return std::visit([&](const auto& p) -> ChartPoint<S> { return apply_word(w, p); }, pt);
}

/// Dense row-major matrix.
template <Scalar S>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<S> data;

  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, S(0)) {}
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }
  S& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

namespace detail {

template <Scalar S>
FPoint<Dual<S>> seed(const FPoint<S>& pt) {
  const auto v = pt.x.to_array();
  std::array<Dual<S>, 6> d;
  for (std::size_t i = 0; i < 6; ++i) d[i] = Dual<S>::variable(v[i], i, 6);
  return {FState<Dual<S>>::from_array(d), convert<Dual<S>>(pt.a)};
}

// T is a coordinate here: s2 reads it through q1 q2 + T.
template <Scalar S>
QPPoint<Dual<S>> seed(const QPPoint<S>& pt) {
  const auto v = pt.x.to_array();
  std::array<Dual<S>, 5> d;
  for (std::size_t i = 0; i < 5; ++i) d[i] = Dual<S>::variable(v[i], i, 5);
  return {QPState<Dual<S>>::from_array(d), convert<Dual<S>>(pt.a)};
}

}  // namespace detail

/// Exact Jacobian of the state map of w at pt (6x6 in the f-chart, 5x5 over
/// (q1, p1, q2, p2, T) in the qp-chart, whose last row is dT' = dT).
template <template <class> class PointT, Scalar S>
Matrix<S> word_jacobian(const Word& w, const PointT<S>& pt) {
  const auto image = apply_word(w, detail::seed(pt));
  const auto y = image.x.to_array();
  const std::size_t n = y.size();
  Matrix<S> J(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) J(i, j) = y[i].partial(j);
  }
  return J;
}

template <template <class> class PointT, Scalar S>
Matrix<S> generator_jacobian(Generator g, const PointT<S>& pt) {
  return word_jacobian(Word{g}, pt);
}

/// Extended Hamiltonian-chart field (dq1, dp1, dq2, dp2, dT) with dT/dT = 1.
template <Scalar S, class Field = QPField>
std::array<S, 5> extended_qp_field(const QPState<S>& x, const Parameters<S>& a, const Field& field = {}) {
  const QPTangent<S> v = field(x, a);
  return {v.dq1, v.dp1, v.dq2, v.dp2, S(1)};
}

/// J_g(x) V(x, alpha) - V(g(x), g(alpha)); identically zero exactly when the
/// system is invariant under g.
template <Scalar S, class Field = FField>
std::array<S, 6> pushforward_residual(Generator g, const FPoint<S>& pt, const Field& field = {}) {
  const Matrix<S> J = generator_jacobian(g, pt);
  const auto v = field(pt.x, pt.a).to_array();
  const FPoint<S> image = apply_generator(g, pt);
  const auto w = field(image.x, image.a).to_array();
  std::array<S, 6> r;
  for (std::size_t i = 0; i < 6; ++i) {
    S acc(0);
    for (std::size_t j = 0; j < 6; ++j) acc += J(i, j) * v[j];
    r[i] = acc - w[i];
  }
  return r;
}

template <Scalar S, class Field = QPField>
std::array<S, 5> pushforward_residual(Generator g, const QPPoint<S>& pt, const Field& field = {}) {
  const Matrix<S> J = generator_jacobian(g, pt);
  const auto v = extended_qp_field(pt.x, pt.a, field);
  const QPPoint<S> image = apply_generator(g, pt);
  const auto w = extended_qp_field(image.x, image.a, field);
  std::array<S, 5> r;
  for (std::size_t i = 0; i < 5; ++i) {
    S acc(0);
    for (std::size_t j = 0; j < 5; ++j) acc += J(i, j) * v[j];
    r[i] = acc - w[i];
  }
  return r;
}

template <Scalar S, std::size_t N>
bool all_zero(const std::array<S, N>& v) {
  for (const auto& c : v) {
    if (!is_zero(c)) return false;
  }
  return true;
}

/// Powers m in 1..max_order for which (w)^m fixes pt, as a bitmask over m.
/// Throws PoleHit if any intermediate composition hits a pole.
template <class Point>
std::vector<bool> fixing_powers(const Word& w, const Point& pt, int max_order) {
  std::vector<bool> fixed(static_cast<std::size_t>(max_order) + 1, false);
  Point cur = pt;
  for (int m = 1; m <= max_order; ++m) {
    cur = apply_word(w, cur);
    fixed[static_cast<std::size_t>(m)] = (cur == pt);
  }
  return fixed;
}

/// Smallest m <= max_order with (gi gj)^m fixing every sampled point, or
/// nullopt ("unbounded") when there is none. `draw` returns a fresh random
/// point; points on a pole of any intermediate composition are redrawn up to
/// max_retries times in total before InsufficientSamples is thrown.
template <class Sampler>
std::optional<int> relation_order(Generator gi, Generator gj, Sampler&& draw, std::size_t points, int max_order,
                                  std::size_t max_retries = 50) {
  if (max_order < 1) throw PreconditionViolated("max_order must be >= 1");
  const Word w{gi, gj};
  std::vector<bool> all(static_cast<std::size_t>(max_order) + 1, true);
  std::size_t retries = 0;
  for (std::size_t k = 0; k < points;) {
    const auto pt = draw();
    try {
      const auto fixed = fixing_powers(w, pt, max_order);
      for (std::size_t m = 1; m < all.size(); ++m) all[m] = all[m] && fixed[m];
      ++k;
    } catch (const PoleHit&) {
      if (++retries > max_retries) {
        throw InsufficientSamples("relation order: too many samples on a pole");
      }
    }
  }
  for (int m = 1; m <= max_order; ++m) {
    if (all[static_cast<std::size_t>(m)]) return m;
  }
  return std::nullopt;
}

struct AutomorphismIdentity {
  Generator conjugated;  // pi g pi
  Generator expected;
  std::size_t points = 0;
  std::size_t failures = 0;
  bool pass() const { return failures == 0 && points > 0; }
};

/// Checks pi g pi = g' pointwise for (g, g') in {(s0,s1), (s1,s0), (s2,s2),
/// (s3,s3)}, exactly, redrawing samples that hit a pole.
template <class Sampler>
std::vector<AutomorphismIdentity> diagram_automorphism_check(Sampler&& draw, std::size_t points,
                                                             std::size_t max_retries = 50) {
  std::vector<AutomorphismIdentity> out{{Generator::s0, Generator::s1},
                                        {Generator::s1, Generator::s0},
                                        {Generator::s2, Generator::s2},
                                        {Generator::s3, Generator::s3}};
  for (auto& id : out) {
    std::size_t retries = 0;
    while (id.points < points) {
      const auto pt = draw();
      try {
        const auto lhs = apply_word(Word{Generator::pi, id.conjugated, Generator::pi}, pt);
        const auto rhs = apply_generator(id.expected, pt);
        ++id.points;
        if (!(lhs == rhs)) ++id.failures;
      } catch (const PoleHit&) {
        if (++retries > max_retries) throw InsufficientSamples("automorphism check: too many poles");
      }
    }
  }
  return out;
}

}  // namespace a52
