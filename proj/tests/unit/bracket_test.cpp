#include <gtest/gtest.h>

#include "a52/bracket.hpp"
#include "a52/sampling.hpp"

using namespace a52;
using Q = ExactRational;

namespace {

FState<Q> on_leaf(RationalSampler& rng) { return sample_fstate(rng, FConstraints{std::nullopt, true}); }

SampleConfig cfg_with_seed(std::uint64_t seed) {
  SampleConfig c;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(CanonicalBracket, CoordinatePairs) {
  const QPState<Q> x{Q(2), Q(3), Q(5), Q(7), Q(1)};
  auto q1 = [](const auto& s) { return s.q1; };
  auto p1 = [](const auto& s) { return s.p1; };
  auto q2 = [](const auto& s) { return s.q2; };
  auto p2 = [](const auto& s) { return s.p2; };
  EXPECT_EQ(canonical_bracket(q1, p1, x), Q(1));
  EXPECT_EQ(canonical_bracket(p1, q1, x), Q(-1));
  EXPECT_EQ(canonical_bracket(q2, p2, x), Q(1));
  EXPECT_EQ(canonical_bracket(q1, p2, x), Q(0));
  EXPECT_EQ(canonical_bracket(q1, q2, x), Q(0));
}

TEST(FBracket, StatedEntryConfirmedByEmbedding) {
  RationalSampler rng(cfg_with_seed(3), "f2f3");
  for (int k = 0; k < 200; ++k) {
    const auto x = on_leaf(rng);
    const BracketTableF<Q> table(x);
    const auto& e = table.at(FCoord::f2, FCoord::f3);
    ASSERT_TRUE(e.embedded);
    EXPECT_EQ(*e.embedded, x.g1 + x.g2);
    EXPECT_EQ(e.source, BracketSource::stated);
    EXPECT_FALSE(e.sign_discrepancy);
    EXPECT_EQ(f_bracket(FCoord::f2, FCoord::f3, x), x.g1 + x.g2);
  }
}

TEST(FBracket, DerivedEntries) {
  RationalSampler rng(cfg_with_seed(4), "derived");
  const auto x = on_leaf(rng);
  EXPECT_EQ(f_bracket(FCoord::f0, FCoord::f1, x), Q(0));
  EXPECT_EQ(BracketTableF<Q>(x).at(FCoord::f0, FCoord::f1).source, BracketSource::derived_from_embedding);
  // g1 = q1 and f0 = p1.
  EXPECT_EQ(f_bracket(FCoord::g1, FCoord::f0, x), Q(1));
  EXPECT_EQ(f_bracket(FCoord::g2, FCoord::f1, x), Q(1));
  EXPECT_EQ(f_bracket(FCoord::g1, FCoord::g2, x), Q(0));
}

TEST(FBracket, SignDiscrepancyIsReportedNotHidden) {
  RationalSampler rng(cfg_with_seed(5), "sign");
  for (int k = 0; k < 20; ++k) {
    const auto x = on_leaf(rng);
    const BracketTableF<Q> table(x);
    for (FCoord g : {FCoord::g1, FCoord::g2}) {
      const auto& e = table.at(FCoord::f3, g);
      ASSERT_TRUE(e.stated && e.embedded);
      EXPECT_EQ(*e.stated, Q(1));
      EXPECT_EQ(*e.embedded, Q(-1));
      EXPECT_TRUE(e.sign_discrepancy);
      EXPECT_EQ(*e.value, Q(-1));
    }
  }
}

TEST(FBracket, OffLeafFallsBackToStatedEntries) {
  const FState<Q> x{Q(1), Q(2), Q(3), Q(4), Q(5), Q(6)};  // f3 != f0 + f1 - 1
  EXPECT_EQ(f_bracket(FCoord::f2, FCoord::f3, x), Q(11));
  EXPECT_EQ(f_bracket(FCoord::f3, FCoord::f2, x), Q(-11));
  EXPECT_EQ(f_bracket(FCoord::f3, FCoord::g1, x), Q(1));
  EXPECT_THROW(f_bracket(FCoord::f0, FCoord::f1, x), UnspecifiedBracket);
}

TEST(FBracket, AntisymmetryProperty) {
  RationalSampler rng(cfg_with_seed(6), "antisym");
  for (int k = 0; k < 50; ++k) {
    const auto x = on_leaf(rng);
    const BracketTableF<Q> table(x);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        const auto a = static_cast<FCoord>(i), b = static_cast<FCoord>(j);
        ASSERT_TRUE(table.at(a, b).value);
        EXPECT_EQ(*table.at(a, b).value, -*table.at(b, a).value);
      }
    }
  }
}

TEST(FBracket, LeibnizRuleProperty) {
  RationalSampler rng(cfg_with_seed(8), "leibniz");
  auto f2 = [](const auto& y) { return y.f2; };
  auto f3 = [](const auto& y) { return y.f3; };
  auto g1 = [](const auto& y) { return y.g1; };
  auto f3g1 = [](const auto& y) { return y.f3 * y.g1; };
  for (int k = 0; k < 50; ++k) {
    const auto x = on_leaf(rng);
    const Q lhs = embedded_bracket(f2, f3g1, x);
    const Q rhs = embedded_bracket(f2, f3, x) * x.g1 + x.f3 * embedded_bracket(f2, g1, x);
    EXPECT_EQ(lhs, rhs);
  }
}
