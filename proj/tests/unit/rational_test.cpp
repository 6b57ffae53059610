#include <gtest/gtest.h>

#include <random>

#include "a52/errors.hpp"
#include "a52/rational.hpp"

using a52::ExactRational;

TEST(ExactRational, CanonicalForm) {
  EXPECT_EQ(ExactRational(2, 4).to_string(), "1/2");
  EXPECT_EQ(ExactRational(3, -6).to_string(), "-1/2");
  EXPECT_EQ(ExactRational(8, 4).to_string(), "2");
  EXPECT_EQ(ExactRational(0, 7).to_string(), "0");
  EXPECT_EQ(ExactRational(0, 7), ExactRational(0));
}

TEST(ExactRational, ParseForms) {
  EXPECT_EQ(ExactRational::parse("1/8"), ExactRational(1, 8));
  EXPECT_EQ(ExactRational::parse("-3"), ExactRational(-3));
  EXPECT_EQ(ExactRational::parse("+5/10"), ExactRational(1, 2));
  EXPECT_EQ(ExactRational::parse("-0.125"), ExactRational(-1, 8));
  EXPECT_EQ(ExactRational::parse("1e-3"), ExactRational(1, 1000));
  EXPECT_EQ(ExactRational::parse("2.5E2"), ExactRational(250));
  EXPECT_EQ(ExactRational::parse(" 7/3 "), ExactRational(7, 3));
}

TEST(ExactRational, ParseRejectsGarbage) {
  for (const char* bad : {"", "1/0", "abc", "1/", "/2", "1.2.3", "1/2/3", "0x10", "nan", "inf", "1e"}) {
    EXPECT_THROW(ExactRational::parse(bad), a52::ParseError) << bad;
  }
}

TEST(ExactRational, Arithmetic) {
  const ExactRational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, ExactRational(1, 2));
  EXPECT_EQ(a - b, ExactRational(1, 6));
  EXPECT_EQ(a * b, ExactRational(1, 18));
  EXPECT_EQ(a / b, ExactRational(2));
  EXPECT_EQ(-a, ExactRational(-1, 3));
  EXPECT_LT(b, a);
  EXPECT_TRUE(is_zero(a - a));
  EXPECT_EQ((a - b * ExactRational(3)).sign(), -1);
  EXPECT_THROW(a / ExactRational(0), std::domain_error);
}

TEST(ExactRational, NoOverflowOnLargeProducts) {
  ExactRational x(1, 3);
  for (int i = 0; i < 200; ++i) x = x * ExactRational(7, 11) + ExactRational(1, 3);
  EXPECT_FALSE(x.is_zero());
  EXPECT_GT(x.denominator(), mpz_class(1) << 400);
  EXPECT_NEAR(x.to_double(), 11.0 / 12.0, 1e-12);
}

// Property: to_string then parse is the identity, for values built by
// random field operations.
TEST(ExactRational, StringRoundTripProperty) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
  for (int trial = 0; trial < 500; ++trial) {
    ExactRational x(num(rng), den(rng));
    const int ops = static_cast<int>(rng() % 5);
    for (int k = 0; k < ops; ++k) {
      const ExactRational y(num(rng), den(rng));
      switch (rng() % 4) {
        case 0: x += y; break;
        case 1: x -= y; break;
        case 2: x *= y; break;
        default:
          if (!y.is_zero()) x /= y;
      }
    }
    const std::string s = x.to_string();
    EXPECT_EQ(ExactRational::parse(s), x) << s;
    EXPECT_EQ(ExactRational::parse(s).to_string(), s);
  }
}

TEST(ExactRational, FieldAxiomsProperty) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 50);
  for (int trial = 0; trial < 300; ++trial) {
    const ExactRational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * b, b * a);
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
  }
}

TEST(ExactRational, ToDouble) {
  EXPECT_DOUBLE_EQ(ExactRational(1, 8).to_double(), 0.125);
  EXPECT_DOUBLE_EQ(a52::to_double(ExactRational(-3, 4)), -0.75);
}
