#pragma once

#include <array>

#include "a52/model.hpp"

namespace a52 {

/// d/dt rates of the symmetric-form system.
template <Scalar S>
struct FTangent {
  S df0{0}, df1{0}, df2{0}, df3{0}, dg1{0}, dg2{0};

  std::array<S, 6> to_array() const { return {df0, df1, df2, df3, dg1, dg2}; }
  static FTangent from_array(const std::array<S, 6>& v) { return {v[0], v[1], v[2], v[3], v[4], v[5]}; }
  friend bool operator==(const FTangent&, const FTangent&) = default;
};

/// d/dT rates of the Hamiltonian-chart system.
template <Scalar S>
struct QPTangent {
  S dq1{0}, dp1{0}, dq2{0}, dp2{0};

  std::array<S, 4> to_array() const { return {dq1, dp1, dq2, dp2}; }
  static QPTangent from_array(const std::array<S, 4>& v) { return {v[0], v[1], v[2], v[3]}; }
  friend bool operator==(const QPTangent&, const QPTangent&) = default;
};

/// The autonomous six-variable system, term for term:
///
///   f0' = {2(f1-f3)g1 - 2g2 f1 - a1 - a3} f0 + a0 (f1 - f3)
///   f1' = {2(f0-f3)g2 - 2g1 f0 - a0 - a3} f1 + a1 (f0 - f3)
///   f2' = {(f3-f1+3f0)g1 + (f3+3f1-f0)g2 + 1} f2 - 4 a2 g1 g2
///   f3' = -(2 f0 g1 + 2 f1 g2 + a0 + a1) f3 - a3 (f0 + f1)
///   g1' = (f0-f1+f3) g1^2 + {(f0-f1-f3) g2 + a0+a1+a3} g1 + f2 (f3 + 3f1 - f0)
///   g2' = (f1-f0+f3) g2^2 + {(f1-f0-f3) g1 + a0+a1+a3} g2 + f2 (f3 + 3f0 - f1)
template <Scalar S>
FTangent<S> f_vector_field(const FState<S>& x, const Parameters<S>& a) {
  const auto& [f0, f1, f2, f3, g1, g2] = x;
  const S two(2), three(3), four(4);
  const S a013 = a.alpha0 + a.alpha1 + a.alpha3;
  FTangent<S> v;
  v.df0 = (two * (f1 - f3) * g1 - two * g2 * f1 - a.alpha1 - a.alpha3) * f0 + a.alpha0 * (f1 - f3);
  v.df1 = (two * (f0 - f3) * g2 - two * g1 * f0 - a.alpha0 - a.alpha3) * f1 + a.alpha1 * (f0 - f3);
  v.df2 = ((f3 - f1 + three * f0) * g1 + (f3 + three * f1 - f0) * g2 + S(1)) * f2 - four * a.alpha2 * g1 * g2;
  v.df3 = -(two * f0 * g1 + two * f1 * g2 + a.alpha0 + a.alpha1) * f3 - a.alpha3 * (f0 + f1);
  v.dg1 = (f0 - f1 + f3) * g1 * g1 + ((f0 - f1 - f3) * g2 + a013) * g1 + f2 * (f3 + three * f1 - f0);
  v.dg2 = (f1 - f0 + f3) * g2 * g2 + ((f1 - f0 - f3) * g1 + a013) * g2 + f2 * (f3 + three * f0 - f1);
  return v;
}

template <Scalar S>
void require_nonsingular_time(const QPState<S>& x) {
  if (is_zero(x.T)) throw SingularTime("T = 0: the Hamiltonian-chart field is singular");
}

/// The coupled Painleve III system in d/dT form.
template <Scalar S>
QPTangent<S> qp_vector_field(const QPState<S>& x, const Parameters<S>& a) {
  require_nonsingular_time(x);
  const auto& [q1, p1, q2, p2, T] = x;
  const S two(2), four(4);
  const S a013 = a.alpha0 + a.alpha1 + a.alpha3;
  QPTangent<S> v;
  v.dq1 = (two * q1 * q1 * p1 - q1 * q1 + a013 * q1) / T - S(1) + four * p2 + two * q1 * q2 * p2 / T;
  v.dp1 = (-two * q1 * p1 * p1 + two * q1 * p1 - a013 * p1 + a.alpha0) / T - two * p1 * q2 * p2 / T;
  v.dq2 = (two * q2 * q2 * p2 - q2 * q2 + a013 * q2) / T - S(1) + four * p1 + two * q1 * p1 * q2 / T;
  v.dp2 = (-two * q2 * p2 * p2 + two * q2 * p2 - a013 * p2 + a.alpha1) / T - two * q1 * p1 * p2 / T;
  return v;
}

template <Scalar S>
S hamiltonian(const QPState<S>& x, const Parameters<S>& a) {
  require_nonsingular_time(x);
  const auto& [q1, p1, q2, p2, T] = x;
  const S two(2), four(4);
  const S a013 = a.alpha0 + a.alpha1 + a.alpha3;
  const S block1 = q1 * q1 * p1 * p1 - q1 * q1 * p1 + a013 * q1 * p1 - a.alpha0 * q1;
  const S block2 = q2 * q2 * p2 * p2 - q2 * q2 * p2 + a013 * q2 * p2 - a.alpha1 * q2;
  return block1 / T - p1 + block2 / T - p2 + four * p1 * p2 + two * q1 * p1 * q2 * p2 / T;
}

/// (dH/dp1, -dH/dq1, dH/dp2, -dH/dq2), differentiated with dual numbers.
template <Scalar S>
QPTangent<S> hamiltonian_vector_field(const QPState<S>& x, const Parameters<S>& a) {
  require_nonsingular_time(x);
  using D = Dual<S>;
  const QPState<D> xd{D::variable(x.q1, 0, 4), D::variable(x.p1, 1, 4), D::variable(x.q2, 2, 4),
                      D::variable(x.p2, 3, 4), D(x.T)};
  const D h = hamiltonian(xd, convert<D>(a));
  return {h.partial(1), -h.partial(0), h.partial(3), -h.partial(2)};
}

/// Function objects wrapping the two fields, so identity checks can be run
/// against alternative (e.g. deliberately mutated) fields.
struct FField {
  template <Scalar S>
  FTangent<S> operator()(const FState<S>& x, const Parameters<S>& a) const {
    return f_vector_field(x, a);
  }
};

struct QPField {
  template <Scalar S>
  QPTangent<S> operator()(const QPState<S>& x, const Parameters<S>& a) const {
    return qp_vector_field(x, a);
  }
};

template <Scalar S>
struct IntegralResiduals {
  S linear{0};       // d f3 - d(f0 + f1)
  S exponential{0};  // d(f2 - g1 g2) - (f2 - g1 g2)
  friend bool operator==(const IntegralResiduals&, const IntegralResiduals&) = default;
};

/// Both residuals vanish identically once the parameters are normalized.
template <Scalar S, class Field = FField>
IntegralResiduals<S> first_integral_residuals(const FState<S>& x, const Parameters<S>& a,
                                              const Field& field = {}) {
  const FTangent<S> v = field(x, a);
  return {v.df3 - (v.df0 + v.df1), (v.df2 - x.g1 * v.dg2 - x.g2 * v.dg1) - (x.f2 - x.g1 * x.g2)};
}

/// df_i at a point of {f_i = 0} with alpha_i = 0; zero certifies that the
/// divisor is invariant under the flow.
template <Scalar S, class Field = FField>
S divisor_tangency_residual(int i, const FState<S>& x, const Parameters<S>& a, const Field& field = {}) {
  if (i < 0 || i > 3) throw PreconditionViolated("divisor index must be in 0..3");
  if (!is_zero(x.f(i))) {
    throw PreconditionViolated("divisor f" + std::to_string(i) + " = 0 requires f" + std::to_string(i) + " = 0");
  }
  if (!is_zero(a[i])) {
    throw PreconditionViolated("divisor f" + std::to_string(i) + " = 0 requires alpha" + std::to_string(i) + " = 0");
  }
  const FTangent<S> v = field(x, a);
  switch (i) {
    case 0: return v.df0;
    case 1: return v.df1;
    case 2: return v.df2;
    default: return v.df3;
  }
}

/// (q1, p1, q2, p2, T) -> (p1, p2, q1 q2 + T, p1 + p2 - 1, q1, q2).
template <Scalar S>
FState<S> lift_to_f(const QPState<S>& x) {
  return {x.p1, x.p2, x.q1 * x.q2 + x.T, x.p1 + x.p2 - S(1), x.q1, x.q2};
}

template <Scalar S>
bool on_level_set(const FState<S>& x) {
  return is_zero(x.f3 - (x.f0 + x.f1 - S(1)));
}

/// Inverse of lift_to_f on the level set f3 = f0 + f1 - 1. Returns T = 0
/// when f2 = g1 g2; callers that need the Hamiltonian field reject that.
template <Scalar S>
QPState<S> reduce_to_qp(const FState<S>& x) {
  if (!on_level_set(x)) throw OffLevelSet("f3 != f0 + f1 - 1");
  return {x.g1, x.f0, x.g2, x.f1, x.f2 - x.g1 * x.g2};
}

template <Scalar S>
struct ConjugacyResidual {
  QPTangent<S> rates;  // (lifted d/dt rates) / T minus the d/dT field
  S time_rate{0};      // d(f2 - g1 g2)/dt minus T
};

/// Compares the symmetric-form field, pulled back through t + c = log T
/// (so d/dt = T d/dT), against the Hamiltonian-chart field.
template <Scalar S, class Field = FField, class Reduced = QPField>
ConjugacyResidual<S> conjugated_field_residual(const QPState<S>& x, const Parameters<S>& a,
                                               const Field& field = {}, const Reduced& reduced = {}) {
  require_nonsingular_time(x);
  const FState<S> y = lift_to_f(x);
  const FTangent<S> v = field(y, a);
  const QPTangent<S> w = reduced(x, a);
  ConjugacyResidual<S> r;
  r.rates = {v.dg1 / x.T - w.dq1, v.df0 / x.T - w.dp1, v.dg2 / x.T - w.dq2, v.df1 / x.T - w.dp2};
  r.time_rate = (v.df2 - y.g1 * v.dg2 - y.g2 * v.dg1) - x.T;
  return r;
}

template <Scalar S>
bool is_zero(const ConjugacyResidual<S>& r) {
  for (const auto& c : r.rates.to_array()) {
    if (!is_zero(c)) return false;
  }
  return is_zero(r.time_rate);
}

}  // namespace a52
