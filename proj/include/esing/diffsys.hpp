#pragma once

#include <map>
#include <utility>
#include <vector>

#include "esing/matrix.hpp"
#include "esing/roots.hpp"
#include "esing/series.hpp"

namespace esing {

/// The first-order system y' = A y with A over Q(z). The monic common
/// denominator T of the entries is cached.
class DiffSystem {
 public:
  explicit DiffSystem(RatFunMatrix A) : A_(std::move(A)) {
    if (!A_.is_square() || A_.rows() == 0) throw Error("system matrix must be square and nonempty");
    T_ = Poly(1);
    for (const auto& f : A_.data()) T_ = lcm(T_, f.den());
  }

  std::size_t dim() const { return A_.rows(); }
  const RatFunMatrix& matrix() const { return A_; }
  const RatFun& operator()(std::size_t i, std::size_t j) const { return A_(i, j); }
  const Poly& denominator() const { return T_; }

  /// T * A, a polynomial matrix.
  PolyMatrix numerator_matrix() const {
    return A_.map([&](const RatFun& f) { return exact_div(f.num() * T_, f.den()); });
  }

  RatFun trace() const {
    RatFun t;
    for (std::size_t i = 0; i < dim(); ++i) t += A_(i, i);
    return t;
  }

  /// Largest pole order of an entry at a.
  int pole_order(const Rat& a) const { return T_.root_multiplicity(a); }

  friend bool operator==(const DiffSystem& a, const DiffSystem& b) { return a.A_ == b.A_; }
  friend bool operator!=(const DiffSystem& a, const DiffSystem& b) { return !(a == b); }

 private:
  RatFunMatrix A_;
  Poly T_;
};

struct SingularLocus {
  std::vector<std::pair<Rat, int>> rational_points;   // always contains 0
  std::vector<std::pair<Poly, int>> residual_factors;  // squarefree, monic, no rational roots
};

/// Factors z*T(z) into rational linear factors and a squarefree residual.
inline SingularLocus singular_locus(const DiffSystem& S) {
  auto split = rational_roots(Poly::z() * S.denominator());
  SingularLocus out;
  out.rational_points = split.roots;
  out.residual_factors = squarefree_factorization(split.residual);
  return out;
}

/// Exact matrix Taylor expansion of the fundamental solution normalized to the
/// identity at an ordinary point c, through degree `order`.
inline Matrix<TruncSeries> fundamental_series(const DiffSystem& S, const Rat& c, int order) {
  if (sgn(S.denominator()(c)) == 0) throw Error("expansion at singular point");
  const std::size_t n = S.dim();
  const std::size_t K = static_cast<std::size_t>(order);
  // A_j: Taylor coefficients of A at c.
  std::vector<RatMatrix> Aj(K + 1, RatMatrix(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto s = expand_ratfun(S(i, j), c, order);
      for (std::size_t k = 0; k <= K; ++k) Aj[k](i, j) = s[static_cast<int>(k)];
    }
  std::vector<RatMatrix> Y(K + 1, RatMatrix(n, n));
  Y[0] = RatMatrix::identity(n);
  for (std::size_t k = 0; k < K; ++k) {
    RatMatrix acc(n, n);
    for (std::size_t j = 0; j <= k; ++j) acc = acc + Aj[j] * Y[k - j];
    const Rat inv{Int(1), Int(static_cast<unsigned long>(k + 1))};
    Y[k + 1] = acc.map([&](const Rat& x) { return Rat(x * inv); });
  }
  Matrix<TruncSeries> F(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rat> v(K + 1);
      for (std::size_t k = 0; k <= K; ++k) v[k] = Y[k](i, j);
      F(i, j) = TruncSeries(c, std::move(v));
    }
  return F;
}

/// Residual T*y' - (T*A)*y of a series vector; zero iff y solves the system to
/// the available order. Works at any center, singular or not.
inline std::vector<TruncSeries> cleared_residual(const DiffSystem& S, const std::vector<TruncSeries>& y) {
  const std::size_t n = S.dim();
  if (y.size() != n) throw Error("vector length does not match system dimension");
  const Rat c = y.front().center();
  int order = y.front().order();
  for (const auto& s : y) order = std::min(order, s.order());
  const int K = order - 1;
  const PolyMatrix N = S.numerator_matrix();
  const TruncSeries T = TruncSeries::from_poly(S.denominator(), c, K);
  std::vector<TruncSeries> out;
  for (std::size_t i = 0; i < n; ++i) {
    TruncSeries r = T * y[i].derivative().truncate(K);
    for (std::size_t j = 0; j < n; ++j)
      if (!N(i, j).is_zero()) r = r - TruncSeries::from_poly(N(i, j), c, K) * y[j].truncate(K);
    out.push_back(std::move(r));
  }
  return out;
}

/// System satisfied by w = P^{-1} y:  A_P = P^{-1} A P - P^{-1} P'.
inline DiffSystem gauge_transform(const DiffSystem& S, const RatFunMatrix& P) {
  if (P.rows() != S.dim() || !P.is_square()) throw Error("gauge matrix has wrong shape");
  if (determinant(P).is_zero()) throw Error("non-invertible gauge");
  const RatFunMatrix Pinv = inverse(P);
  return DiffSystem(Pinv * S.matrix() * P - Pinv * derivative(P));
}

/// System satisfied by P * y for solutions y of S (the inverse direction).
inline DiffSystem push_forward(const DiffSystem& S, const RatFunMatrix& P) {
  if (P.rows() != S.dim() || !P.is_square()) throw Error("gauge matrix has wrong shape");
  if (determinant(P).is_zero()) throw Error("non-invertible gauge");
  const RatFunMatrix Pinv = inverse(P);
  return DiffSystem(P * S.matrix() * Pinv + derivative(P) * Pinv);
}

/// Exponent vectors of degree-N monomials in n variables, graded
/// lexicographic with y1 > y2 > ... > yn.
inline std::vector<std::vector<int>> monomials(std::size_t n, int N) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == n) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, left - e);
    }
  };
  rec(rec, 0, N);
  return out;
}

struct SymPower {
  DiffSystem system;
  std::vector<std::vector<int>> monomials;  // row i of the system is monomial i
};

/// The system satisfied by all degree-N monomials of a solution vector.
inline SymPower sym_power(const DiffSystem& S, int N) {
  if (N < 1) throw Error("symmetric power needs N >= 1");
  const std::size_t n = S.dim();
  auto mons = monomials(n, N);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;
  RatFunMatrix B(mons.size(), mons.size());
  // (y^e)' = sum_j e_j y^{e - e_j} sum_l A_jl y_l
  for (std::size_t r = 0; r < mons.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      const int ej = mons[r][j];
      if (ej == 0) continue;
      for (std::size_t l = 0; l < n; ++l) {
        if (S(j, l).is_zero()) continue;
        auto target = mons[r];
        --target[j];
        ++target[l];
        auto& entry = B(r, index.at(target));
        entry += RatFun(static_cast<long>(ej)) * S(j, l);
      }
    }
  }
  return SymPower{DiffSystem(std::move(B)), std::move(mons)};
}

/// Rows A^0..A^jmax with A^0 = a and A^{j+1} = (A^j)' + A^T A^j, so that the
/// j-th derivative of sum_i a_i f_i equals sum_i A^j_i f_i for solutions f.
inline std::vector<std::vector<RatFun>> combination_derivative_rows(const DiffSystem& S, const std::vector<RatFun>& a,
                                                                    int jmax) {
  const std::size_t n = S.dim();
  if (a.size() != n) throw Error("coefficient vector length does not match system dimension");
  std::vector<std::vector<RatFun>> rows{a};
  for (int j = 0; j < jmax; ++j) {
    const auto& prev = rows.back();
    std::vector<RatFun> next(n);
    for (std::size_t l = 0; l < n; ++l) {
      RatFun acc = prev[l].derivative();
      for (std::size_t i = 0; i < n; ++i)
        if (!prev[i].is_zero() && !S(i, l).is_zero()) acc += S(i, l) * prev[i];
      next[l] = std::move(acc);
    }
    rows.push_back(std::move(next));
  }
  return rows;
}

inline std::vector<std::vector<RatFun>> combination_derivative_rows(const DiffSystem& S, const std::vector<Poly>& a,
                                                                    int jmax) {
  std::vector<RatFun> r(a.begin(), a.end());
  return combination_derivative_rows(S, r, jmax);
}

/// Vanishing order at alpha != 0 of the Wronskian of a fundamental matrix that
/// is holomorphic there: the residue of Trace(A), which must be a simple pole
/// with nonnegative integer residue.
inline int wronskian_order(const DiffSystem& S, const Rat& alpha) {
  if (sgn(alpha) == 0) throw Error("wronskian order is not defined at the origin");
  const RatFun tr = S.trace();
  const int k = tr.pole_order(alpha);
  if (k == 0) return 0;
  if (k >= 2) throw Error("non-apparent singularity structure: trace has a pole of order " + std::to_string(k));
  const Rat res = tr.residue(alpha);
  if (!is_integer(res) || sgn(res) < 0)
    throw Error("non-apparent singularity structure: trace residue " + to_string(res));
  return static_cast<int>(res.get_num().get_si());
}

/// Determinant of a series matrix by cofactor expansion.
inline TruncSeries series_determinant(const Matrix<TruncSeries>& M) {
  const std::size_t n = M.rows();
  if (n == 1) return M(0, 0);
  TruncSeries acc;
  bool first = true;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<TruncSeries> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, kk = 0; k < n; ++k) {
        if (k == j) continue;
        minor(i - 1, kk++) = M(i, k);
      }
    TruncSeries term = M(0, j) * series_determinant(minor);
    if (j % 2) term = -term;
    acc = first ? term : acc + term;
    first = false;
  }
  return acc;
}

}  // namespace esing
