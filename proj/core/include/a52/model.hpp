#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <string>
#include <string_view>
#include <vector>

#include "a52/dual.hpp"
#include "a52/errors.hpp"
#include "a52/float64.hpp"
#include "a52/rational.hpp"

namespace a52 {

/// The arithmetic the formulas need: a field with integer literals and an
/// exact zero test (used for pole detection).
template <class S>
concept Scalar = std::copyable<S> && requires(S a, S b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  S(1);
  { is_zero(a) } -> std::convertible_to<bool>;
};

static_assert(Scalar<double>);
static_assert(Scalar<ExactRational>);
static_assert(Scalar<Dual<ExactRational>>);
static_assert(Scalar<Dual<double>>);

template <Scalar S>
S half() {
  return S(1) / S(2);
}

/// (alpha0, alpha1, alpha2, alpha3). The affine normalization
/// alpha0 + alpha1 + 2 alpha2 + alpha3 = 1/2 is enforced by make_parameters
/// in strict mode only; the struct itself is a plain value.
template <Scalar S>
struct Parameters {
  S alpha0{0}, alpha1{0}, alpha2{0}, alpha3{0};

  S& operator[](int i) { return i == 0 ? alpha0 : i == 1 ? alpha1 : i == 2 ? alpha2 : alpha3; }
  const S& operator[](int i) const {
    return i == 0 ? alpha0 : i == 1 ? alpha1 : i == 2 ? alpha2 : alpha3;
  }
  friend bool operator==(const Parameters&, const Parameters&) = default;
};

enum class ParameterMode { strict, relaxed };

template <Scalar S>
S normalization_residual(const Parameters<S>& p) {
  return p.alpha0 + p.alpha1 + S(2) * p.alpha2 + p.alpha3 - half<S>();
}

template <Scalar S>
Parameters<S> make_parameters(S a0, S a1, S a2, S a3, ParameterMode mode = ParameterMode::strict) {
  Parameters<S> p{std::move(a0), std::move(a1), std::move(a2), std::move(a3)};
  if (mode == ParameterMode::strict && !is_zero(normalization_residual(p))) {
    throw NormalizationViolation("alpha0 + alpha1 + 2 alpha2 + alpha3 must equal 1/2");
  }
  return p;
}

/// Symmetric-form coordinates (f0, f1, f2, f3, g1, g2).
template <Scalar S>
struct FState {
  S f0{0}, f1{0}, f2{0}, f3{0}, g1{0}, g2{0};

  static constexpr std::size_t size = 6;
  static constexpr std::array<const char*, 6> names{"f0", "f1", "f2", "f3", "g1", "g2"};

  std::array<S, 6> to_array() const { return {f0, f1, f2, f3, g1, g2}; }
  static FState from_array(const std::array<S, 6>& v) { return {v[0], v[1], v[2], v[3], v[4], v[5]}; }

  // f_i for i in 0..3.
  const S& f(int i) const { return i == 0 ? f0 : i == 1 ? f1 : i == 2 ? f2 : f3; }
  S& f(int i) { return i == 0 ? f0 : i == 1 ? f1 : i == 2 ? f2 : f3; }

  friend bool operator==(const FState&, const FState&) = default;
};

/// Hamiltonian-chart coordinates (q1, p1, q2, p2) together with the
/// independent variable T.
template <Scalar S>
struct QPState {
  S q1{0}, p1{0}, q2{0}, p2{0}, T{1};

  static constexpr std::size_t size = 5;
  static constexpr std::array<const char*, 5> names{"q1", "p1", "q2", "p2", "T"};

  std::array<S, 5> to_array() const { return {q1, p1, q2, p2, T}; }
  static QPState from_array(const std::array<S, 5>& v) { return {v[0], v[1], v[2], v[3], v[4]}; }

  friend bool operator==(const QPState&, const QPState&) = default;
};

/// t + c = log T. Only used to translate symmetric-form time stamps.
struct TimeChange {
  double c = 0.0;

  double T_of_t(double t) const { return std::exp(t + c); }
  double t_of_T(double T) const {
    if (!(T > 0.0)) throw SingularTime("t = log T - c needs T > 0");
    return std::log(T) - c;
  }
};

template <Scalar To, Scalar From, std::size_t N>
std::array<To, N> convert_array(const std::array<From, N>& in) {
  std::array<To, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if constexpr (std::same_as<To, double>) {
      out[i] = to_double(in[i]);
    } else {
      out[i] = To(in[i]);
    }
  }
  return out;
}

template <Scalar To, Scalar From>
FState<To> convert(const FState<From>& x) {
  return FState<To>::from_array(convert_array<To>(x.to_array()));
}
template <Scalar To, Scalar From>
QPState<To> convert(const QPState<From>& x) {
  return QPState<To>::from_array(convert_array<To>(x.to_array()));
}
template <Scalar To, Scalar From>
Parameters<To> convert(const Parameters<From>& a) {
  auto v = convert_array<To>(std::array<From, 4>{a.alpha0, a.alpha1, a.alpha2, a.alpha3});
  return {v[0], v[1], v[2], v[3]};
}

// Exact string forms used on every text boundary.
std::string format_scalar(const ExactRational& r);
std::string format_scalar(double v);

/// Comma-separated list of exact rationals ("1/8,1/8,1/16,1/8").
std::vector<ExactRational> parse_rational_list(std::string_view csv);
std::string format_rational_list(const std::vector<ExactRational>& values);

FState<ExactRational> parse_fstate(std::string_view csv);
QPState<ExactRational> parse_qpstate(std::string_view csv);
Parameters<ExactRational> parse_parameters(std::string_view csv,
                                           ParameterMode mode = ParameterMode::strict);

template <class State>
std::string format_state(const State& x) {
  std::vector<ExactRational> v;
  for (const auto& c : x.to_array()) v.push_back(c);
  return format_rational_list(v);
}
inline std::string format_parameters(const Parameters<ExactRational>& a) {
  return format_rational_list({a.alpha0, a.alpha1, a.alpha2, a.alpha3});
}

}  // namespace a52
