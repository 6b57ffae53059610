#include <gtest/gtest.h>

#include <set>

#include "a52/sampling.hpp"

using namespace a52;
using Q = ExactRational;

TEST(SampleConfig, Validation) {
  SampleConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.coeff_bound = 0;
  EXPECT_THROW(cfg.validate(), PreconditionViolated);
  cfg = {};
  cfg.points_per_identity = 0;
  EXPECT_THROW(RationalSampler{cfg}, PreconditionViolated);
  cfg = {};
  cfg.max_order = 0;
  EXPECT_THROW(cfg.validate(), PreconditionViolated);
}

TEST(Sampler, DeterministicPerStream) {
  SampleConfig cfg;
  RationalSampler a(cfg, "alpha"), b(cfg, "alpha"), c(cfg, "beta");
  bool differs = false;
  for (int k = 0; k < 50; ++k) {
    const Q x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || !(x == c.next());
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(sub_seed(42, "x"), sub_seed(42, "x"));
  EXPECT_NE(sub_seed(42, "x"), sub_seed(43, "x"));
  EXPECT_NE(sub_seed(42, "x"), sub_seed(42, "y"));
}

TEST(Sampler, RespectsCoefficientBound) {
  SampleConfig cfg;
  cfg.coeff_bound = 7;
  RationalSampler rng(cfg, "bound");
  std::set<std::string> seen;
  for (int k = 0; k < 2000; ++k) {
    const Q x = rng.next();
    EXPECT_LE(abs(x.numerator()), 7);
    EXPECT_LE(x.denominator(), 7);
    seen.insert(x.to_string());
    EXPECT_FALSE(rng.next_nonzero().is_zero());
  }
  EXPECT_GT(seen.size(), 50u);
}

TEST(Sampler, StrictParametersAreNormalized) {
  RationalSampler rng(SampleConfig{}, "strict");
  for (int k = 0; k < 200; ++k) EXPECT_EQ(normalization_residual(sample_parameters(rng)), Q(0));
}

TEST(Sampler, PinnedAlpha) {
  RationalSampler rng(SampleConfig{}, "pinned");
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 50; ++k) {
      const auto a = sample_parameters(rng, ParameterConstraints{i});
      EXPECT_EQ(a[i], Q(0));
      EXPECT_EQ(normalization_residual(a), Q(0));
    }
  }
  EXPECT_THROW(sample_parameters(rng, ParameterConstraints{4}), PreconditionViolated);
}

TEST(Sampler, RelaxedParametersAreFree) {
  SampleConfig cfg;
  cfg.constrain_normalization = false;
  RationalSampler rng(cfg, "relaxed");
  int off = 0;
  for (int k = 0; k < 100; ++k) off += !is_zero(normalization_residual(sample_parameters(rng)));
  EXPECT_GT(off, 90);
}

TEST(Sampler, StateConstraints) {
  RationalSampler rng(SampleConfig{}, "states");
  for (int k = 0; k < 100; ++k) {
    for (int i = 0; i < 4; ++i) EXPECT_EQ(sample_fstate(rng, FConstraints{i, false}).f(i), Q(0));
    const auto y = sample_fstate(rng, FConstraints{std::nullopt, true});
    EXPECT_EQ(y.f3, y.f0 + y.f1 - Q(1));
    const auto z = sample_fstate(rng, FConstraints{3, true});
    EXPECT_EQ(z.f3, Q(0));
    EXPECT_EQ(z.f3, z.f0 + z.f1 - Q(1));
    EXPECT_FALSE(sample_qpstate(rng).T.is_zero());
  }
}
