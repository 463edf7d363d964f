#include <gtest/gtest.h>

#include "fibcf/construct.hpp"

using namespace fibcf;

namespace {
BigRat R(long n, long d = 1) { return make_rat(BigInt(n), BigInt(d)); }

// continued fraction [0; a_1, ..., a_n] evaluated bottom-up
BigRat finite_cf(const std::vector<unsigned long>& a) {
  BigRat v = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = 1 / (BigRat(BigInt(*it)) + v);
  return v;
}

std::vector<unsigned long> quotients(const Params& p, std::size_t n) {
  const Word w = fib_word_prefix(n);
  std::vector<unsigned long> a;
  for (std::size_t k = 0; k < n; ++k) a.push_back(w[k] == Letter::LA ? p.a() : p.b());
  return a;
}
}  // namespace

TEST(Convergent, Examples) {
  const Params p(1, 2);
  EXPECT_EQ(convergent(p, 1).value(), R(1));
  EXPECT_EQ(convergent(p, 2).value(), R(2, 3));
  const ConvergentPair c3 = convergent(p, 3);
  EXPECT_EQ(c3.p, 3);
  EXPECT_EQ(c3.q, 4);
  EXPECT_THROW(convergent(p, 0), std::invalid_argument);
}

TEST(Convergent, MatchesFiniteContinuedFraction) {
  for (auto [a, b] : {std::pair{1ul, 2ul}, {2ul, 1ul}, {3ul, 7ul}}) {
    const Params p(a, b);
    const XiSource xi(p);
    for (std::uint64_t j = 1; j <= 60; ++j) EXPECT_EQ(xi.convergent(j).value(), finite_cf(quotients(p, j))) << j;
  }
}

TEST(Convergent, DeterminantAlternates) {
  const XiSource xi(Params(1, 2));
  for (std::uint64_t j : {1ull, 2ull, 7ull, 100ull, 4181ull, 100000ull}) {
    const Mat2 m = xi.prefix_matrix(j);
    EXPECT_EQ(m.det(), j % 2 == 0 ? 1 : -1) << j;
    EXPECT_EQ(xi.convergent(j).p, m.m10);
  }
}

TEST(PartialQuotient, FollowsTheWord) {
  const XiSource xi(Params(1, 2));
  const std::vector<unsigned long> expected{1, 2, 1, 1, 2, 1, 2, 1};
  for (std::uint64_t k = 1; k <= expected.size(); ++k) EXPECT_EQ(xi.partial_quotient(k), expected[k - 1]);
  EXPECT_THROW(xi.partial_quotient(0), std::invalid_argument);
}

TEST(XiEnclosure, CoarseExamples) {
  const RatInterval x = xi_enclosure(Params(1, 2), R(1, 10));
  EXPECT_GT(x.lo(), 0);
  EXPECT_LT(x.hi(), 1);
  EXPECT_LE(x.width(), R(1, 10));
  EXPECT_TRUE(x.contains(xi_enclosure(Params(1, 2), pow10_neg(40))));
  const RatInterval y = xi_enclosure(Params(2, 1), R(1, 10));
  EXPECT_TRUE(certainly_less(y, x));
  EXPECT_THROW(xi_enclosure(Params(1, 2), R(0)), std::invalid_argument);
}

TEST(XiEnclosure, Nested) {
  for (auto [a, b] : {std::pair{1ul, 2ul}, {2ul, 1ul}, {5ul, 3ul}}) {
    const Params p(a, b);
    RatInterval prev = xi_enclosure(p, pow10_neg(10));
    for (unsigned d = 11; d <= 50; ++d) {
      const RatInterval x = xi_enclosure(p, pow10_neg(d));
      EXPECT_LE(x.width(), pow10_neg(d));
      EXPECT_TRUE(prev.contains(x)) << d;
      prev = x;
    }
  }
}

TEST(XiEnclosure, IterationLimit) {
  const XiSource xi(Params(1, 2));
  EXPECT_NO_THROW(xi.word_matrix(30));
  EXPECT_THROW(xi.word_matrix(kMaxWordIndex + 1), ResourceError);
}

TEST(Dyadic, DependsOnlyOnBits) {
  const XiSource used(Params(1, 2));
  used.dyadic(400);
  used.dyadic(37);
  const XiSource fresh(Params(1, 2));
  for (long bits : {1L, 20L, 37L, 64L, 200L, 400L}) {
    const RatInterval d = used.dyadic(bits);
    EXPECT_EQ(d, fresh.dyadic(bits)) << bits;
    EXPECT_LE(d.width(), ldexp_rat(R(1), 2 - bits));
    BigRat scaled = ldexp_rat(d.lo(), bits);
    EXPECT_EQ(scaled.get_den(), 1);
    EXPECT_TRUE(d.contains(used.enclosure(pow10_neg(150))));
  }
}

TEST(Triple, Examples) {
  const Params p(1, 2);
  EXPECT_EQ(triple_direct(p, 1), (ApproxTriple{1, 1, 1, 0}));
  EXPECT_EQ(triple_direct(p, 2), (ApproxTriple{2, 4, 3, 2}));
  EXPECT_EQ(triple_direct(p, 3), (ApproxTriple{3, 25, 18, 13}));
}

TEST(Triple, SequenceEqualsDirect) {
  for (auto [a, b] : {std::pair{1ul, 2ul}, {2ul, 1ul}, {1ul, 3ul}}) {
    const Params p(a, b);
    const auto seq = triple_sequence(p, 12);
    for (unsigned i = 1; i <= 12; ++i) EXPECT_EQ(seq[i - 1], triple_direct(p, i)) << a << b << " " << i;
  }
  EXPECT_THROW(triple_sequence(Params(1, 2), 1), std::invalid_argument);
}

TEST(Triple, DeterminantAndGrowth) {
  for (auto [a, b] : {std::pair{1ul, 2ul}, {4ul, 1ul}}) {
    const auto seq = triple_sequence(Params(a, b), 30);
    for (unsigned i = 1; i <= 30; ++i) {
      EXPECT_EQ(seq[i - 1].det(), fib(i + 2) % 2 == 0 ? 1 : -1) << i;
      if (i >= 2) {
        EXPECT_GT(seq[i - 1].X(), seq[i - 2].X()) << i;
      }
    }
  }
}

TEST(Triple, EntriesAreConsecutiveConvergents) {
  const Params p(1, 2);
  const XiSource xi(p);
  const auto seq = triple_sequence(p, 20);
  for (unsigned i = 2; i <= 20; ++i) {
    const ApproxTriple& t = seq[i - 1];
    const std::uint64_t j = fib_u64(i + 2) - 2;
    EXPECT_EQ(xi.convergent(j), (ConvergentPair{j, t.x1, t.x0})) << i;
    EXPECT_EQ(xi.convergent(j - 1), (ConvergentPair{j - 1, t.x2, t.x1})) << i;
  }
}

TEST(DecideLe, Outcomes) {
  auto exact = [](BigRat l, BigRat r) {
    return [l, r](long) { return std::pair{RatInterval(l), RatInterval(r)}; };
  };
  EXPECT_EQ(decide_le(exact(R(1), R(2))), Decision::Holds);
  EXPECT_EQ(decide_le(exact(R(1), R(1))), Decision::Holds);
  EXPECT_EQ(decide_le(exact(R(3), R(2))), Decision::Fails);
  // overlapping enclosures that never tighten
  auto stuck = [](long) { return std::pair{RatInterval(R(0), R(2)), RatInterval(R(1), R(3))}; };
  EXPECT_EQ(decide_le(stuck, 4), Decision::Undecided);
  auto resource = [](long) -> std::pair<RatInterval, RatInterval> { throw ResourceError("budget"); };
  EXPECT_EQ(decide_le(resource), Decision::Undecided);
}
