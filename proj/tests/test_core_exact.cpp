#include <gtest/gtest.h>

#include <functional>

#include "test_util.hpp"

using namespace esing;
using namespace testing_util;

namespace {

Poly P(std::initializer_list<long> c) {
  std::vector<Rat> v;
  for (long x : c) v.emplace_back(x);
  return Poly(std::move(v));
}

const Poly Z = Poly::z();

// All k x k minors by cofactor expansion; independent of the Bareiss routine.
Poly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Poly(1);
  if (n == 1) return m(0, 0);
  Poly acc;
  for (std::size_t j = 0; j < n; ++j) {
    PolyMatrix sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != j) sub(i - 1, kk++) = m(i, k);
    const Poly t = m(0, j) * cofactor_det(sub);
    acc = (j % 2 == 0) ? acc + t : acc - t;
  }
  return acc;
}

Poly minors_gcd(const PolyMatrix& m, std::size_t k) {
  Poly g;
  std::vector<std::size_t> rows, cols;
  std::function<void(std::size_t)> pick_cols;
  std::function<void(std::size_t)> pick_rows = [&](std::size_t start) {
    if (rows.size() == k) {
      pick_cols(0);
      return;
    }
    for (std::size_t i = start; i < m.rows(); ++i) {
      rows.push_back(i);
      pick_rows(i + 1);
      rows.pop_back();
    }
  };
  pick_cols = [&](std::size_t start) {
    if (cols.size() == k) {
      PolyMatrix sub(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rows[a], cols[b]);
      g = gcd(g, cofactor_det(sub));
      return;
    }
    for (std::size_t j = start; j < m.cols(); ++j) {
      cols.push_back(j);
      pick_cols(j + 1);
      cols.pop_back();
    }
  };
  pick_rows(0);
  return g;
}

// Brute-force root search over p/q with |p| <= 12, 1 <= q <= 6.
std::vector<std::pair<Rat, int>> brute_roots(const Poly& p) {
  std::vector<std::pair<Rat, int>> out;
  std::vector<Rat> seen;
  for (int a = -12; a <= 12; ++a)
    for (int b = 1; b <= 6; ++b) {
      const Rat r = rat(a, b);
      if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
      seen.push_back(r);
      const int m = p.root_multiplicity(r);
      if (m > 0) out.emplace_back(r, m);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Rat, NormalizedRepresentation) {
  const Rat q = rat(6, -4);
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  EXPECT_EQ(to_string(q), "-3/2");
  EXPECT_EQ(factorial(5), 120);
  EXPECT_EQ(binomial(6, 2), 15);
  EXPECT_EQ(pow(rat(2, 3), 3), rat(8, 27));
  EXPECT_EQ(pow(rat(2, 3), -2), rat(9, 4));
  EXPECT_NEAR(log_abs(Rat(1000)), std::log(1000.0), 1e-12);
}

TEST(Poly, ZeroIsEmpty) {
  EXPECT_TRUE(Poly().coeffs().empty());
  EXPECT_TRUE(Poly(0).coeffs().empty());
  EXPECT_TRUE((Z - Z).coeffs().empty());
  EXPECT_EQ(Poly().degree(), -1);
  EXPECT_EQ(P({1, 0, 0}).degree(), 0);
}

TEST(Poly, Arithmetic) {
  EXPECT_EQ((Z + 1) * (Z - 1), Z * Z - 1);
  auto [q, r] = divmod(Z * Z * Z - 1, Z - 2);
  EXPECT_EQ(q, Z * Z + 2 * Z + 4);
  EXPECT_EQ(r, Poly(7));
  EXPECT_EQ(gcd(Z * Z - 1, Z * Z + 2 * Z + 1), Z + 1);
  EXPECT_EQ((Z * Z + 1).shift(Rat(1)), Z * Z + 2 * Z + 2);
  EXPECT_EQ(to_string(Z * Z - Rat(3, 2) * Z + 1), "z^2-3/2*z+1");
  EXPECT_EQ(to_string(-Z), "-z");
  EXPECT_THROW(exact_div(Z * Z + 1, Z), Error);
}

TEST(Poly, GcdDividesBothProperty) {
  std::mt19937 rng(11);
  for (int t = 0; t < 100; ++t) {
    const Poly c = random_poly(rng, 2);
    const Poly p = random_poly(rng, 3) * c, q = random_poly(rng, 3) * c;
    if (p.is_zero() && q.is_zero()) continue;
    const Poly g = gcd(p, q);
    EXPECT_TRUE((p % g).is_zero());
    EXPECT_TRUE((q % g).is_zero());
    if (!c.is_zero()) {
      EXPECT_TRUE((g % c.monic()).is_zero());
    }
  }
}

TEST(Poly, SquarefreeFactorization) {
  const Poly p = pow(Z - 1, 3) * (Z * Z + 1) * (Z + 2);
  const auto f = squarefree_factorization(p);
  Poly back(1);
  for (const auto& [g, m] : f) back = back * pow(g, m);
  EXPECT_EQ(back, p.monic());
}

TEST(RatFun, Normalization) {
  const RatFun f(Z * Z - 1, 2 * Z - 2);
  EXPECT_EQ(f.num(), Rat(1, 2) * (Z + 1));
  EXPECT_EQ(f.den(), Poly(1));
  EXPECT_TRUE(f.is_polynomial());
  const RatFun g = RatFun(Z) / RatFun(Z - 1) - RatFun(1);
  EXPECT_EQ(g.num(), Poly(1));
  EXPECT_EQ(g.den(), Z - 1);
  EXPECT_EQ(g.residue(Rat(1)), Rat(1));
  EXPECT_EQ(RatFun(Poly(1), pow(Z - 1, 2)).pole_order(Rat(1)), 2);
  EXPECT_THROW(RatFun(Poly(1), Z)(Rat(0)), Error);
}

TEST(RatFun, NormalizationIsIdempotentProperty) {
  std::mt19937 rng(12);
  for (int t = 0; t < 100; ++t) {
    Poly d = random_poly(rng, 3);
    if (d.is_zero()) continue;
    const RatFun f(random_poly(rng, 3), d);
    const RatFun g(f.num(), f.den());
    EXPECT_EQ(g.num(), f.num());
    EXPECT_EQ(g.den(), f.den());
    EXPECT_EQ(gcd(f.num(), f.den()).degree(), f.num().is_zero() ? 0 : 0);
    EXPECT_EQ(f.den().lead(), Rat(1));
  }
}

TEST(RationalRoots, Examples) {
  auto a = rational_roots(Z * Z * Z - Z);
  ASSERT_EQ(a.roots.size(), 3u);
  EXPECT_EQ(a.roots[0], std::make_pair(Rat(-1), 1));
  EXPECT_EQ(a.roots[1], std::make_pair(Rat(0), 1));
  EXPECT_EQ(a.roots[2], std::make_pair(Rat(1), 1));
  EXPECT_EQ(a.residual.degree(), 0);

  auto b = rational_roots(Z * Z + 1);
  EXPECT_TRUE(b.roots.empty());
  EXPECT_EQ(b.residual, Z * Z + 1);

  auto c = rational_roots(pow(Z - 3, 2) * (Z * Z - 2));
  ASSERT_EQ(c.roots.size(), 1u);
  EXPECT_EQ(c.roots[0], std::make_pair(Rat(3), 2));
  EXPECT_EQ(c.residual, Z * Z - 2);

  EXPECT_THROW(rational_roots(Poly()), Error);
}

TEST(RationalRoots, MatchesBruteForceAndReconstructs) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> nroots(0, 4), num(-12, 12), den(1, 6);
  for (int t = 0; t < 60; ++t) {
    Poly p = random_nonzero_rat(rng) * (Z * Z + Rat(num(rng) * num(rng) % 5 + 3));
    const int k = nroots(rng);
    for (int i = 0; i < k; ++i) p = p * Poly::linear(rat(num(rng), den(rng)));
    const auto split = rational_roots(p);
    EXPECT_EQ(split.roots, brute_roots(p));
    Poly back = split.residual;
    for (const auto& [r, m] : split.roots) back = back * pow(Poly::linear(r), m);
    EXPECT_EQ(back, p);
    for (const auto& [r, m] : brute_roots(split.residual)) ADD_FAILURE() << "residual root " << to_string(r);
  }
}

TEST(Smith, Examples) {
  const auto id = smith_normal_form(PolyMatrix::identity(2));
  EXPECT_EQ(id.S, PolyMatrix::identity(2));

  const PolyMatrix m{{Z - 3, Poly(0)}, {Poly(0), Poly(1)}};
  const auto s = smith_normal_form(m);
  ASSERT_EQ(s.invariant_factors.size(), 2u);
  EXPECT_EQ(s.invariant_factors[0], Poly(1));
  EXPECT_EQ(s.invariant_factors[1], Z - 3);

  const PolyMatrix row{{Z - 3, -Z * (Z - 3)}};
  const auto r = smith_normal_form(row);
  ASSERT_EQ(r.invariant_factors.size(), 1u);
  EXPECT_EQ(r.invariant_factors[0], Z - 3);
  EXPECT_EQ(r.U * row * r.V, r.S);
}

TEST(Smith, UnimodularAndMinorsGcdProperty) {
  std::mt19937 rng(14);
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  for (int t = 0; t < 40; ++t) {
    const PolyMatrix M = random_poly_matrix(rng, dim(rng), dim(rng), 2);
    const auto s = smith_normal_form(M);
    EXPECT_EQ(s.U * M * s.V, s.S);
    EXPECT_EQ(determinant(s.U).degree(), 0);
    EXPECT_EQ(determinant(s.V).degree(), 0);
    for (std::size_t i = 0; i < s.S.rows(); ++i)
      for (std::size_t j = 0; j < s.S.cols(); ++j)
        if (i != j) {
          EXPECT_TRUE(s.S(i, j).is_zero());
        }
    Poly prod(1);
    for (std::size_t k = 0; k < s.invariant_factors.size(); ++k) {
      const Poly& d = s.invariant_factors[k];
      EXPECT_EQ(d.lead(), Rat(1));
      if (k > 0) {
        EXPECT_TRUE(divides(s.invariant_factors[k - 1], d));
      }
      prod = prod * d;
      EXPECT_EQ(prod, minors_gcd(M, k + 1)) << "k=" << k + 1;
    }
    EXPECT_EQ(s.invariant_factors.size(), rank(M));
  }
}

TEST(Matrix, EvalExamples) {
  const PolyMatrix a{{Poly(1), -Z}};
  EXPECT_EQ(eval_matrix(a, Rat(3)), (RatMatrix{{Rat(1), Rat(-3)}}));
  EXPECT_EQ(eval_matrix(PolyMatrix::identity(3), Rat(7, 2)), RatMatrix::identity(3));
  const PolyMatrix b{{Z * Z, Z + 1}};
  EXPECT_EQ(eval_matrix(b, Rat(1, 2)), (RatMatrix{{Rat(1, 4), Rat(3, 2)}}));
}

TEST(Matrix, FieldRoutines) {
  const RatMatrix m{{Rat(1), Rat(2)}, {Rat(3), Rat(4)}};
  EXPECT_EQ(determinant(m), Rat(-2));
  EXPECT_EQ(inverse(m) * m, RatMatrix::identity(2));
  const RatMatrix s{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  EXPECT_EQ(rank(s), 1u);
  EXPECT_THROW(inverse(s), Error);
  const auto ker = nullspace(s);
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_EQ(s(0, 0) * ker[0][0] + s(0, 1) * ker[0][1], Rat(0));
}

TEST(Matrix, BareissMatchesCofactorProperty) {
  std::mt19937 rng(15);
  for (int t = 0; t < 30; ++t) {
    const PolyMatrix M = random_poly_matrix(rng, 3, 3, 2);
    EXPECT_EQ(determinant(M), cofactor_det(M));
  }
}
