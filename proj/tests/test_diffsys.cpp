#include <gtest/gtest.h>

#include "corpus.hpp"
#include "test_util.hpp"

using namespace esing;
using namespace testing_util;

namespace {

const Poly Z = Poly::z();

RatFunMatrix rows(std::initializer_list<std::initializer_list<RatFun>> r) { return RatFunMatrix(r); }

Matrix<TruncSeries> series_product(const RatFunMatrix& P, const Matrix<TruncSeries>& F) {
  const Rat c = F(0, 0).center();
  const int K = F(0, 0).order();
  Matrix<TruncSeries> out(P.rows(), F.cols());
  for (std::size_t i = 0; i < P.rows(); ++i)
    for (std::size_t j = 0; j < F.cols(); ++j) {
      TruncSeries acc = TruncSeries::constant(Rat(0), c, K);
      for (std::size_t k = 0; k < P.cols(); ++k) acc = acc + expand_ratfun(P(i, k), c, K) * F(k, j);
      out(i, j) = acc;
    }
  return out;
}

Matrix<TruncSeries> series_times_const(const Matrix<TruncSeries>& F, const RatMatrix& C) {
  Matrix<TruncSeries> out(F.rows(), C.cols());
  for (std::size_t i = 0; i < F.rows(); ++i)
    for (std::size_t j = 0; j < C.cols(); ++j) {
      TruncSeries acc = TruncSeries::constant(Rat(0), F(0, 0).center(), F(0, 0).order());
      for (std::size_t k = 0; k < F.cols(); ++k) acc = acc + C(k, j) * F(i, k);
      out(i, j) = acc;
    }
  return out;
}

std::vector<TruncSeries> column(const Matrix<TruncSeries>& F, std::size_t j) {
  std::vector<TruncSeries> v;
  for (std::size_t i = 0; i < F.rows(); ++i) v.push_back(F(i, j));
  return v;
}

}  // namespace

TEST(DiffSystem, DenominatorIsMonicLcm) {
  const DiffSystem S(rows({{RatFun(Poly(1), 2 * Z - 2), RatFun(Z)}, {RatFun(Poly(3), Z * Z), RatFun(0)}}));
  EXPECT_EQ(S.denominator(), Z * Z * (Z - 1));
  EXPECT_EQ(S.dim(), 2u);
  EXPECT_THROW(DiffSystem(RatFunMatrix(0, 0)), Error);
  EXPECT_THROW(DiffSystem(RatFunMatrix(1, 2)), Error);
}

TEST(SingularLocus, Examples) {
  const auto a = singular_locus(DiffSystem(rows({{1}})));
  ASSERT_EQ(a.rational_points.size(), 1u);
  EXPECT_EQ(a.rational_points[0], std::make_pair(Rat(0), 1));
  EXPECT_TRUE(a.residual_factors.empty());

  const auto b = singular_locus(DiffSystem(rows({{RatFun(Z, Z - 1)}})));
  ASSERT_EQ(b.rational_points.size(), 2u);
  EXPECT_EQ(b.rational_points[0], std::make_pair(Rat(0), 1));
  EXPECT_EQ(b.rational_points[1], std::make_pair(Rat(1), 1));

  const auto c = singular_locus(DiffSystem(rows({{RatFun(Poly(1), Z * Z - 2)}})));
  ASSERT_EQ(c.rational_points.size(), 1u);
  ASSERT_EQ(c.residual_factors.size(), 1u);
  EXPECT_EQ(c.residual_factors[0].first, Z * Z - 2);
}

TEST(FundamentalSeries, Examples) {
  const auto F = fundamental_series(DiffSystem(rows({{1, 0}, {0, 2}})), Rat(0), 3);
  EXPECT_EQ(F(0, 0), TruncSeries(Rat(0), {Rat(1), Rat(1), rat(1, 2), rat(1, 6)}));
  EXPECT_EQ(F(1, 1), TruncSeries(Rat(0), {Rat(1), Rat(2), Rat(2), rat(4, 3)}));
  EXPECT_TRUE(F(0, 1).is_zero());

  const auto G = fundamental_series(DiffSystem(rows({{0}})), Rat(0), 4);
  EXPECT_EQ(G(0, 0), TruncSeries::constant(Rat(1), Rat(0), 4));

  const auto R = fundamental_series(DiffSystem(rows({{0, 1}, {-1, 0}})), Rat(0), 4);
  const TruncSeries cosz(Rat(0), {Rat(1), Rat(0), rat(-1, 2), Rat(0), rat(1, 24)});
  const TruncSeries sinz(Rat(0), {Rat(0), Rat(1), Rat(0), rat(-1, 6), Rat(0)});
  EXPECT_EQ(R(0, 0), cosz);
  EXPECT_EQ(R(1, 0), -sinz);
  EXPECT_EQ(R(0, 1), sinz);
  EXPECT_EQ(R(1, 1), cosz);

  EXPECT_THROW(fundamental_series(DiffSystem(rows({{RatFun(Z, Z - 1)}})), Rat(1), 4), Error);
}

TEST(FundamentalSeries, SolvesCorpusSystems) {
  for (const auto& c : corpus::systems()) {
    const Rat pt = ordinary_point(c.system);
    const auto F = fundamental_series(c.system, pt, 30);
    for (std::size_t j = 0; j < c.system.dim(); ++j)
      for (const auto& r : cleared_residual(c.system, column(F, j))) EXPECT_TRUE(r.is_zero()) << c.name;
    EXPECT_EQ(series_product(RatFunMatrix::identity(c.system.dim()), F)(0, 0)[0], Rat(1));
  }
}

TEST(FundamentalSeries, CorpusFunctionsSolveTheirSystems) {
  for (const auto& c : corpus::systems()) {
    std::vector<TruncSeries> y;
    for (const auto& f : c.functions) y.push_back(f.series(40));
    for (const auto& r : cleared_residual(c.system, y)) EXPECT_TRUE(r.is_zero()) << c.name;
  }
}

TEST(Gauge, Examples) {
  const DiffSystem S(rows({{1, 2}, {3, RatFun(Z)}}));
  EXPECT_EQ(gauge_transform(S, RatFunMatrix::identity(2)), S);

  const auto a = gauge_transform(DiffSystem(rows({{1}})), rows({{RatFun(Z)}}));
  EXPECT_EQ(a(0, 0), RatFun(1) - RatFun(Poly(1), Z));

  const auto b = gauge_transform(DiffSystem(rows({{RatFun(Z, Z - 1)}})), rows({{RatFun(Z - 1)}}));
  EXPECT_EQ(b(0, 0), RatFun(1));

  EXPECT_THROW(gauge_transform(S, rows({{1, 1}, {1, 1}})), Error);
}

TEST(Gauge, PushForwardInvertsGauge) {
  const DiffSystem S(rows({{1, 0}, {0, 2}}));
  const RatFunMatrix P = rows({{RatFun(Z - 2), 0}, {0, 1}});
  const auto pushed = push_forward(S, P);
  EXPECT_EQ(pushed, DiffSystem(rows({{RatFun(Z - 1, Z - 2), 0}, {0, 2}})));
  EXPECT_EQ(gauge_transform(pushed, P), S);
}

TEST(Gauge, ContractBySeriesProperty) {
  std::mt19937 rng(31);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
    const DiffSystem S = random_system(rng, n);
    const RatFunMatrix P = to_ratfun(random_unimodular(rng, n));
    const auto SP = gauge_transform(S, P);
    const Rat c = ordinary_point(S);
    if (sgn(SP.denominator()(c)) == 0) continue;
    const int K = 15;
    const auto F = fundamental_series(S, c, K);
    const auto W = series_product(inverse(P), F);  // P^{-1} F
    RatMatrix W0(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) W0(i, j) = W(i, j)[0];
    const auto expected = series_times_const(fundamental_series(SP, c, K), W0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(W(i, j), expected(i, j));
  }
}

TEST(Gauge, CompositionProperty) {
  std::mt19937 rng(32);
  for (int t = 0; t < 15; ++t) {
    const DiffSystem S = random_system(rng, 2);
    const RatFunMatrix P = to_ratfun(random_unimodular(rng, 2));
    RatFunMatrix Q = to_ratfun(random_unimodular(rng, 2));
    Q(0, 0) = Q(0, 0) * RatFun(Poly::linear(random_rat(rng)));
    if (determinant(Q).is_zero()) continue;
    EXPECT_EQ(gauge_transform(gauge_transform(S, P), Q), gauge_transform(S, P * Q));
  }
}

TEST(SymPower, Examples) {
  const DiffSystem S(rows({{1, 0}, {0, 2}}));
  const auto one = sym_power(S, 1);
  EXPECT_EQ(one.system, S);
  const auto two = sym_power(S, 2);
  EXPECT_EQ(two.monomials, (std::vector<std::vector<int>>{{2, 0}, {1, 1}, {0, 2}}));
  EXPECT_EQ(two.system, DiffSystem(rows({{2, 0, 0}, {0, 3, 0}, {0, 0, 4}})));

  const auto nil = sym_power(DiffSystem(rows({{0, 1}, {0, 0}})), 2);
  EXPECT_EQ(nil.system, DiffSystem(rows({{0, 2, 0}, {0, 0, 1}, {0, 0, 0}})));
  EXPECT_THROW(sym_power(S, 0), Error);
}

TEST(SymPower, DimensionAndGradedLexOrder) {
  const auto m = monomials(3, 2);
  EXPECT_EQ(m, (std::vector<std::vector<int>>{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}}));
  EXPECT_EQ(monomials(3, 3).size(), 10u);
  EXPECT_EQ(monomials(2, 4).size(), 5u);
}

TEST(SymPower, NaturalityProperty) {
  std::mt19937 rng(33);
  for (int t = 0; t < 8; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
    const int N = 2 + t % 2;
    const DiffSystem S = random_system(rng, n);
    const auto sp = sym_power(S, N);
    EXPECT_TRUE(divides(S.denominator(), pow(S.denominator(), 1)));
    EXPECT_TRUE((S.denominator() % sp.system.denominator()).is_zero());
    const Rat c = ordinary_point(S);
    const auto F = fundamental_series(S, c, 12);
    for (std::size_t col = 0; col < n; ++col) {
      std::vector<TruncSeries> y;
      for (const auto& e : sp.monomials) {
        TruncSeries acc = TruncSeries::constant(Rat(1), c, 12);
        for (std::size_t i = 0; i < n; ++i)
          for (int k = 0; k < e[i]; ++k) acc = acc * F(i, col);
        y.push_back(acc);
      }
      for (const auto& r : cleared_residual(sp.system, y)) EXPECT_TRUE(r.is_zero());
    }
  }
}

TEST(CombinationRows, Examples) {
  const DiffSystem D(rows({{1, 0}, {0, 2}}));
  const auto r = combination_derivative_rows(D, std::vector<Poly>{Poly(1), Poly(1)}, 2);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[1], (std::vector<RatFun>{1, 2}));
  EXPECT_EQ(r[2], (std::vector<RatFun>{1, 4}));

  const auto zero = combination_derivative_rows(D, std::vector<Poly>{Poly(0), Poly(0)}, 3);
  for (const auto& row : zero)
    for (const auto& e : row) EXPECT_TRUE(e.is_zero());

  const DiffSystem N(rows({{0, 1}, {0, 0}}));
  const auto s = combination_derivative_rows(N, std::vector<Poly>{Poly(1), Poly(0)}, 2);
  EXPECT_EQ(s[1], (std::vector<RatFun>{0, 1}));
  EXPECT_EQ(s[2], (std::vector<RatFun>{0, 0}));

  EXPECT_THROW(combination_derivative_rows(D, std::vector<Poly>{Poly(1)}, 2), Error);
}

TEST(CombinationRows, ConsistencyProperty) {
  std::mt19937 rng(34);
  for (const auto& c : corpus::systems()) {
    const std::size_t n = c.system.dim();
    std::vector<Poly> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(random_poly(rng, 2, 3));
    const int K = 30;
    std::vector<TruncSeries> f;
    for (const auto& g : c.functions) f.push_back(g.series(K));
    const auto A = combination_derivative_rows(c.system, a, 3);
    // At 0 the rows may have poles (bessel), so compare z^3 * T^3 multiples.
    const Poly T3 = pow(c.system.denominator(), 3);
    TruncSeries F = TruncSeries::constant(Rat(0), Rat(0), K);
    for (std::size_t i = 0; i < n; ++i) F = F + TruncSeries::from_poly(a[i], Rat(0), K) * f[i];
    TruncSeries Fj = F;
    for (int j = 0; j <= 3; ++j) {
      const int Kj = K - j;
      TruncSeries lhs = TruncSeries::constant(Rat(0), Rat(0), Kj);
      for (std::size_t i = 0; i < n; ++i) {
        const RatFun cleared = A[static_cast<std::size_t>(j)][i] * RatFun(T3);
        ASSERT_TRUE(cleared.is_polynomial()) << c.name;
        lhs = lhs + TruncSeries::from_poly(cleared.num(), Rat(0), Kj) * f[i].truncate(Kj);
      }
      const auto rhs = TruncSeries::from_poly(T3, Rat(0), Kj) * Fj.truncate(Kj);
      EXPECT_TRUE((lhs - rhs).is_zero()) << c.name << " j=" << j;
      Fj = Fj.derivative();
    }
  }
}

TEST(Wronskian, Examples) {
  EXPECT_EQ(wronskian_order(DiffSystem(rows({{RatFun(Z, Z - 1)}})), Rat(1)), 1);
  EXPECT_EQ(wronskian_order(DiffSystem(rows({{1, 0}, {0, 2}})), Rat(5)), 0);
  const auto g = push_forward(DiffSystem(rows({{1, 0}, {0, 2}})), rows({{RatFun(Z - 2), 0}, {0, 1}}));
  EXPECT_EQ(wronskian_order(g, Rat(2)), 1);
}

TEST(Wronskian, Errors) {
  EXPECT_THROW(wronskian_order(DiffSystem(rows({{1}})), Rat(0)), Error);
  EXPECT_THROW(wronskian_order(DiffSystem(rows({{RatFun(Poly(1), pow(Z - 1, 2))}})), Rat(1)), Error);
  EXPECT_THROW(wronskian_order(DiffSystem(rows({{RatFun(Poly(1), 2 * Z - 2)}})), Rat(1)), Error);
  EXPECT_THROW(wronskian_order(DiffSystem(rows({{RatFun(Poly(-1), Z - 1)}})), Rat(1)), Error);
}

TEST(Wronskian, DeterminantSolvesTraceEquationOnCorpus) {
  for (const auto& c : corpus::systems()) {
    const Rat pt = ordinary_point(c.system);
    const int K = 50;
    const auto W = series_determinant(fundamental_series(c.system, pt, K));
    const auto tr = expand_ratfun(c.system.trace(), pt, K - 1);
    EXPECT_TRUE((W.derivative() - tr * W.truncate(K - 1)).is_zero()) << c.name;
  }
}
