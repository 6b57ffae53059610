#pragma once

#include <array>
#include <optional>
#include <string>

#include "a52/dynamics.hpp"

namespace a52 {

enum class FCoord { f0, f1, f2, f3, g1, g2 };

inline const char* name(FCoord c) { return FState<double>::names[static_cast<int>(c)]; }

template <Scalar S>
const S& coordinate(const FState<S>& x, FCoord c) {
  switch (c) {
    case FCoord::f0: return x.f0;
    case FCoord::f1: return x.f1;
    case FCoord::f2: return x.f2;
    case FCoord::f3: return x.f3;
    case FCoord::g1: return x.g1;
    default: return x.g2;
  }
}

/// Canonical bracket {F, G} = sum_i dF/dq_i dG/dp_i - dF/dp_i dG/dq_i of two
/// functions on the Hamiltonian chart, at x. T is a passive parameter.
template <Scalar S, class F, class G>
S canonical_bracket(F&& lhs, G&& rhs, const QPState<S>& x) {
  using D = Dual<S>;
  const QPState<D> xd{D::variable(x.q1, 0, 4), D::variable(x.p1, 1, 4), D::variable(x.q2, 2, 4),
                      D::variable(x.p2, 3, 4), D(x.T)};
  const D u = lhs(xd);
  const D v = rhs(xd);
  return u.partial(0) * v.partial(1) - u.partial(1) * v.partial(0) + u.partial(2) * v.partial(3) -
         u.partial(3) * v.partial(2);
}

/// Bracket of two functions of the symmetric-form coordinates, obtained by
/// pulling the canonical bracket back through lift_to_f. x must lie on the
/// level set f3 = f0 + f1 - 1 (OffLevelSet otherwise).
template <Scalar S, class F, class G>
S embedded_bracket(F&& lhs, G&& rhs, const FState<S>& x) {
  const QPState<S> base = reduce_to_qp(x);
  return canonical_bracket([&](const auto& qp) { return lhs(lift_to_f(qp)); },
                           [&](const auto& qp) { return rhs(lift_to_f(qp)); }, base);
}

/// The three entries given explicitly for the symmetric form:
///   {f2, f3} = g1 + g2,  {f3, g1} = 1,  {f3, g2} = 1
/// together with their antisymmetric partners. nullopt for any other pair.
template <Scalar S>
std::optional<S> stated_bracket(FCoord lhs, FCoord rhs, const FState<S>& x) {
  auto entry = [&](FCoord a, FCoord b) -> std::optional<S> {
    if (a == FCoord::f2 && b == FCoord::f3) return x.g1 + x.g2;
    if (a == FCoord::f3 && (b == FCoord::g1 || b == FCoord::g2)) return S(1);
    return std::nullopt;
  };
  if (auto v = entry(lhs, rhs)) return v;
  if (auto v = entry(rhs, lhs)) return -*v;
  return std::nullopt;
}

enum class BracketSource { stated, derived_from_embedding, unspecified };

template <Scalar S>
struct BracketEntry {
  BracketSource source = BracketSource::unspecified;
  std::optional<S> value;   // the value f_bracket returns
  std::optional<S> stated;  // explicitly given value, if any
  std::optional<S> embedded;
  // Stated and embedded values both exist and differ.
  bool sign_discrepancy = false;
};

/// All 36 pairwise brackets of (f0, f1, f2, f3, g1, g2) at one point.
template <Scalar S>
class BracketTableF {
 public:
  explicit BracketTableF(const FState<S>& x) {
    const bool embeddable = on_level_set(x);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        const auto a = static_cast<FCoord>(i);
        const auto b = static_cast<FCoord>(j);
        auto& e = entries_[i][j];
        e.stated = stated_bracket(a, b, x);
        if (embeddable) {
          e.embedded = embedded_bracket([a](const auto& y) { return coordinate(y, a); },
                                        [b](const auto& y) { return coordinate(y, b); }, x);
        }
        if (e.stated && e.embedded) {
          e.sign_discrepancy = !(*e.stated == *e.embedded);
        }
        // The embedding is the only complete structure, so it wins when available.
        if (e.embedded) {
          e.source = e.stated ? BracketSource::stated : BracketSource::derived_from_embedding;
          e.value = e.embedded;
        } else if (e.stated) {
          e.source = BracketSource::stated;
          e.value = e.stated;
        }
      }
    }
  }

  const BracketEntry<S>& at(FCoord a, FCoord b) const {
    return entries_[static_cast<int>(a)][static_cast<int>(b)];
  }

 private:
  std::array<std::array<BracketEntry<S>, 6>, 6> entries_;
};

template <Scalar S>
S f_bracket(FCoord lhs, FCoord rhs, const FState<S>& x) {
  const BracketTableF<S> table(x);
  const auto& e = table.at(lhs, rhs);
  if (!e.value) {
    throw UnspecifiedBracket(std::string("{") + name(lhs) + ", " + name(rhs) +
                             "} is not given and the point is off the level set f3 = f0 + f1 - 1");
  }
  return *e.value;
}

}  // namespace a52
