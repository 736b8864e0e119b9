#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace esing;
using namespace testing_util;

namespace {

TruncSeries S0(std::initializer_list<Rat> c, const Rat& center = Rat(0)) { return TruncSeries(center, std::vector<Rat>(c)); }

const Poly Z = Poly::z();

}  // namespace

TEST(Series, CauchyProductExample) {
  const auto a = S0({Rat(1), Rat(1), rat(1, 2)});
  const auto b = S0({Rat(1), Rat(-1), rat(1, 2)});
  const auto c = series_arith(a, b, SeriesOp::mul);
  EXPECT_EQ(c.order(), 2);
  EXPECT_EQ(c, S0({Rat(1), Rat(0), Rat(0)}));
}

TEST(Series, SelfDivisionIsOne) {
  const auto a = S0({Rat(3), Rat(-2), rat(5, 7), Rat(1)});
  EXPECT_EQ(series_arith(a, a, SeriesOp::div), TruncSeries::constant(Rat(1), Rat(0), 3));
}

TEST(Series, ValuationShiftedDivision) {
  const auto num = S0({Rat(0), Rat(1), Rat(1), Rat(0)}, Rat(1));
  const auto den = S0({Rat(0), Rat(1), Rat(0), Rat(0)}, Rat(1));
  const auto q = divide(num, den);
  EXPECT_EQ(q.center(), Rat(1));
  ASSERT_GE(q.order(), 1);
  EXPECT_EQ(q[0], Rat(1));
  EXPECT_EQ(q[1], Rat(1));
  for (int i = 2; i <= q.order(); ++i) EXPECT_EQ(q[i], Rat(0));
}

TEST(Series, Errors) {
  const auto zero = TruncSeries::constant(Rat(0), Rat(0), 4);
  EXPECT_THROW(divide(S0({Rat(1), Rat(2)}), zero), Error);
  EXPECT_THROW(S0({Rat(1)}, Rat(0)) + S0({Rat(1)}, Rat(1)), Error);
  EXPECT_THROW(expand_ratfun(RatFun(Poly(1), Z - 2), Rat(2), 3), Error);
  // a has lower valuation than b: no series quotient
  EXPECT_THROW(divide(S0({Rat(1), Rat(0)}), S0({Rat(0), Rat(1)})), Error);
}

TEST(Series, ExpandExamples) {
  const auto g = expand_ratfun(RatFun(Poly(1), Poly(1) - Z), Rat(0), 3);
  EXPECT_EQ(g, S0({Rat(1), Rat(1), Rat(1), Rat(1)}));
  EXPECT_EQ(expand_ratfun(RatFun(Z), Rat(1), 2), S0({Rat(1), Rat(1), Rat(0)}, Rat(1)));
  EXPECT_EQ(expand_ratfun(RatFun(Z, Z - 1), Rat(2), 2), S0({Rat(2), Rat(-1), Rat(1)}, Rat(2)));
}

TEST(Series, RingAxiomsProperty) {
  std::mt19937 rng(21);
  for (int t = 0; t < 50; ++t) {
    const Rat c = random_rat(rng);
    const auto a = random_series(rng, c, 8), b = random_series(rng, c, 8), d = random_series(rng, c, 8);
    EXPECT_EQ((a * b) * d, a * (b * d));
    EXPECT_EQ(a * (b + d), a * b + a * d);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Series, ResultOrderIsMinimum) {
  const auto a = TruncSeries::constant(Rat(1), Rat(0), 5);
  const auto b = TruncSeries::constant(Rat(2), Rat(0), 3);
  EXPECT_EQ((a + b).order(), 3);
  EXPECT_EQ((a * b).order(), 3);
}

TEST(Series, ExpandIsMultiplicativeProperty) {
  std::mt19937 rng(22);
  for (int t = 0; t < 40; ++t) {
    const Rat c = random_rat(rng);
    Poly d1 = random_poly(rng, 2), d2 = random_poly(rng, 2);
    if (d1.is_zero() || d2.is_zero() || sgn(d1(c)) == 0 || sgn(d2(c)) == 0) continue;
    const RatFun f(random_poly(rng, 3), d1), g(random_poly(rng, 3), d2);
    EXPECT_EQ(expand_ratfun(f * g, c, 10), expand_ratfun(f, c, 10) * expand_ratfun(g, c, 10));
    EXPECT_EQ(expand_ratfun(f + g, c, 10), expand_ratfun(f, c, 10) + expand_ratfun(g, c, 10));
  }
}

TEST(Series, DivisionPostconditionProperty) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> shift(0, 3);
  for (int t = 0; t < 60; ++t) {
    const Rat c = random_rat(rng);
    auto b = random_series(rng, c, 12);
    if (sgn(b[0]) == 0) continue;
    const int s = shift(rng);
    b = b.shift_up(s).truncate(12);
    const auto a = (random_series(rng, c, 12) * b).truncate(12);
    const auto q = divide(a, b);
    const auto back = q * b.truncate(q.order()) - a.truncate(q.order());
    EXPECT_TRUE(back.is_zero());
    EXPECT_EQ(q.order(), 12 - s);
  }
}

TEST(Series, DerivativeAndValue) {
  const auto e = S0({Rat(1), Rat(1), rat(1, 2), rat(1, 6)});
  EXPECT_EQ(e.derivative(), S0({Rat(1), Rat(1), rat(1, 2)}));
  EXPECT_EQ(e.truncated_value(Rat(1)), rat(8, 3));
  EXPECT_EQ(S0({Rat(0), Rat(0), Rat(5)}).valuation(), 2);
  EXPECT_EQ(TruncSeries::constant(Rat(0), Rat(0), 4).valuation(), 5);
}
