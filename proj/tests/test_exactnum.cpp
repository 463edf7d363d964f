#include <gtest/gtest.h>

#include <random>

#include "fibcf/fibword.hpp"

using namespace fibcf;

namespace {
BigRat R(long n, long d = 1) { return make_rat(BigInt(n), BigInt(d)); }
RatInterval I(BigRat lo, BigRat hi) { return {std::move(lo), std::move(hi)}; }

struct RandomRationals {
  std::mt19937_64 rng{12345};
  BigRat next() {
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 97);
    return R(num(rng), den(rng));
  }
  RatInterval interval() {
    BigRat a = next(), b = next();
    return I(std::min(a, b), std::max(a, b));
  }
  // a point of x: lo + (hi - lo) * k / 16
  BigRat point(const RatInterval& x) { return x.lo() + x.width() * R(static_cast<long>(rng() % 17), 16); }
};

// the golden ratio truncated after 49 decimals
const char* kGolden50 = "1.6180339887498948482045868343656381177203091798057";
}  // namespace

TEST(Rational, Canonical) {
  BigRat q = R(6, -4);
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  EXPECT_EQ(R(2, 4), R(1, 2));
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/4"), R(3, 4));
  EXPECT_EQ(parse_rational("0.1"), R(1, 10));
  EXPECT_EQ(parse_rational("-2.5e-2"), R(-1, 40));
  EXPECT_EQ(parse_rational("1e5"), R(100000));
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_EQ(to_decimal(R(1, 3), 5, Rounding::Down), "3.3333e-1");
  EXPECT_EQ(to_decimal(R(1, 3), 5, Rounding::Up), "3.3334e-1");
  EXPECT_EQ(to_decimal(R(-1, 3), 5, Rounding::Down), "-3.3334e-1");
  EXPECT_EQ(to_decimal(R(0), 5, Rounding::Down), "0");
}

TEST(Rational, DirectedDecimalsBracketTheValue) {
  RandomRationals g;
  for (int k = 0; k < 200; ++k) {
    BigRat q = g.next();
    EXPECT_LE(parse_rational(to_decimal(q, 7, Rounding::Down)), q);
    EXPECT_GE(parse_rational(to_decimal(q, 7, Rounding::Up)), q);
  }
}

TEST(Rational, Helpers) {
  EXPECT_EQ(floor_div(BigInt(-7), BigInt(2)), -4);
  EXPECT_EQ(ceil_div(BigInt(-7), BigInt(2)), -3);
  EXPECT_EQ(floor_log2(R(1, 3)), -2);
  EXPECT_EQ(floor_log2(R(8)), 3);
  EXPECT_EQ(decimal_digits(BigInt(999)), 3u);
  EXPECT_EQ(decimal_digits(BigInt(1000)), 4u);
  EXPECT_EQ(round_down(R(1, 3), 4), R(5, 16));
  EXPECT_EQ(round_up(R(1, 3), 4), R(6, 16));
}

TEST(Mat2, Products) {
  const Params p(1, 2);
  const Mat2 A = quotient_matrix(p.a()), B = quotient_matrix(p.b());
  const Mat2 M{5, 7, -2, 3};
  EXPECT_EQ(Mat2::identity() * M, M);
  EXPECT_EQ(A * B, (Mat2{3, 1, 2, 1}));
  EXPECT_EQ(A * B * A, (Mat2{4, 3, 3, 2}));
  const Mat2 N{1, -4, 2, 9};
  EXPECT_EQ((M * N).det(), M.det() * N.det());
}

TEST(Params, Validation) {
  EXPECT_THROW(Params(0, 2), std::invalid_argument);
  EXPECT_THROW(Params(3, 3), std::invalid_argument);
  EXPECT_NO_THROW(Params(2, 1));
}

TEST(Phi, Examples) {
  const Params p(1, 2);
  EXPECT_EQ(phi(Word(), p), Mat2::identity());
  EXPECT_EQ(phi(Word::from_string("a"), p), (Mat2{1, 1, 1, 0}));
  EXPECT_EQ(phi(Word::from_string("aba"), p), (Mat2{4, 3, 3, 2}));
}

TEST(Phi, HomomorphismAndDeterminant) {
  std::mt19937 rng(99);
  const Params p(3, 5);
  auto random_word = [&](std::size_t n) {
    std::string s;
    for (std::size_t k = 0; k < n; ++k) s += (rng() & 1) ? 'a' : 'b';
    return Word::from_string(s);
  };
  for (int trial = 0; trial < 100; ++trial) {
    const Word u = random_word(rng() % 51), v = random_word(rng() % 51);
    EXPECT_EQ(phi(u + v, p), phi(u, p) * phi(v, p));
    EXPECT_EQ(phi(u, p).det(), u.length() % 2 == 0 ? 1 : -1);
  }
}

TEST(Interval, Examples) {
  EXPECT_EQ(I(R(1), R(1)) + I(R(2), R(2)), I(R(3), R(3)));
  EXPECT_EQ(I(R(0), R(1)) * I(R(-1), R(1)), I(R(-1), R(1)));
  EXPECT_EQ(I(R(1, 3), R(1, 2)) * I(R(1, 3), R(1, 2)), I(R(1, 9), R(1, 4)));
  EXPECT_EQ(interval_pow(I(R(2), R(2)), 2), I(R(4), R(4)));
  EXPECT_EQ(interval_pow(I(R(1, 2), R(1)), 3), I(R(1, 8), R(1)));
  EXPECT_EQ(interval_pow(I(R(-1), R(2)), 2), I(R(0), R(4)));
  EXPECT_THROW(I(R(2), R(1)), std::invalid_argument);
  EXPECT_THROW(interval_pow(I(R(1), R(2)), 4), std::invalid_argument);
}

TEST(Interval, ContainmentProperty) {
  RandomRationals g;
  for (int trial = 0; trial < 300; ++trial) {
    const RatInterval x = g.interval(), y = g.interval();
    const BigRat t = g.point(x), s = g.point(y);
    EXPECT_TRUE((x + y).contains(t + s));
    EXPECT_TRUE((x - y).contains(t - s));
    EXPECT_TRUE((x * y).contains(t * s));
    for (int k = 1; k <= 3; ++k) {
      BigRat pw = 1;
      for (int j = 0; j < k; ++j) pw *= t;
      EXPECT_TRUE(interval_pow(x, k).contains(pw));
    }
    if (!y.contains_zero()) {
      EXPECT_TRUE((x / y).contains(t / s));
    }
    EXPECT_TRUE(interval_abs(x).contains(BigRat(abs(t))));
    EXPECT_TRUE(nearest_int_distance(x).contains(nearest_int_distance(RatInterval(t)).lo()));
  }
}

TEST(Interval, Sqrt) {
  const RatInterval s = interval_sqrt(RatInterval(R(5)), 100);
  EXPECT_LE(s.lo() * s.lo(), 5);
  EXPECT_GE(s.hi() * s.hi(), 5);
  EXPECT_LE(s.width(), ldexp_rat(R(1), -99));
  EXPECT_EQ(interval_sqrt(I(R(4), R(9)), 10), I(R(2), R(3)));
  EXPECT_EQ(interval_sqrt(I(R(-1), R(0)), 10), RatInterval(R(0)));
}

TEST(NearestIntDistance, Examples) {
  EXPECT_EQ(nearest_int_distance(RatInterval(R(7, 2))), RatInterval(R(1, 2)));
  EXPECT_EQ(nearest_int_distance(RatInterval(R(10, 3))), RatInterval(R(1, 3)));
  const RatInterval d = nearest_int_distance(I(R(49, 100), R(51, 100)));
  EXPECT_TRUE(d.contains(I(R(49, 100), R(1, 2))));
  EXPECT_EQ(nearest_int_distance(I(R(0), R(3, 4))), I(R(0), R(1, 2)));
  EXPECT_EQ(nearest_int_distance(I(R(-1, 10), R(1, 10))), I(R(0), R(1, 10)));
}

TEST(GoldenRatio, Examples) {
  const RatInterval g = golden_ratio(R(1, 100));
  EXPECT_TRUE(g.contains(parse_rational("1.618")));
  EXPECT_LE(g.width(), R(1, 100));
  const RatInterval inv = RatInterval(R(1)) / g;
  EXPECT_TRUE(inv.contains(parse_rational("0.618")));

  const RatInterval fine = golden_ratio(pow10_neg(30));
  EXPECT_LE(fine.width(), pow10_neg(30));
  const RatInterval sq = interval_pow(fine, 2) - (fine + R(1));
  EXPECT_TRUE(sq.contains(R(0)));
}

TEST(GoldenRatio, NestedAndContainsReference) {
  const BigRat ref = parse_rational(kGolden50);
  RatInterval prev = golden_ratio(R(1));
  for (unsigned d = 1; d <= 45; d += 4) {
    const RatInterval g = golden_ratio(pow10_neg(d));
    EXPECT_TRUE(prev.contains(g)) << d;
    // the reference is truncated after 49 decimals
    EXPECT_TRUE((g - I(R(0), pow10_neg(49))).contains(ref)) << d;
    prev = g;
  }
}
