#pragma once

#include <vector>

#include "esing/matrix.hpp"
#include "esing/series.hpp"
#include "esing/smith.hpp"

namespace esing {

/// Rows C_i of an (n-m) x n polynomial matrix with sum_j C_ij(z) f_j(z) == 0.
struct RelationBasis {
  std::size_t n = 0;
  PolyMatrix C;  // C.rows() == n - m

  std::size_t rank_deficit() const { return C.rows(); }
  bool empty() const { return C.rows() == 0; }
};

namespace detail {

/// Scales a polynomial vector to integer coefficients with content 1 and a
/// positive leading coefficient in its first nonzero entry.
inline std::vector<Poly> primitive_row(std::vector<Poly> row) {
  std::vector<Rat> all;
  for (const auto& p : row) all.insert(all.end(), p.coeffs().begin(), p.coeffs().end());
  Rat s = primitive_scale(all);
  for (const auto& p : row)
    if (!p.is_zero()) {
      if (sgn(p.lead()) < 0) s = -s;
      break;
    }
  for (auto& p : row) p *= s;
  return row;
}

inline int row_degree(const PolyMatrix& m, std::size_t i) {
  int d = -1;
  for (std::size_t j = 0; j < m.cols(); ++j) d = std::max(d, m(i, j).degree());
  return d;
}

/// Rightmost column attaining the row degree.
inline std::size_t pivot_col(const PolyMatrix& m, std::size_t i) {
  const int d = row_degree(m, i);
  std::size_t p = 0;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(i, j).degree() == d) p = j;
  return p;
}

/// Mulders-Storjohann reduction to weak Popov form by unimodular row
/// operations; the rows end up with minimal degrees.
inline PolyMatrix weak_popov(PolyMatrix m) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < m.rows() && !changed; ++i)
      for (std::size_t k = 0; k < m.rows() && !changed; ++k) {
        if (i == k || pivot_col(m, i) != pivot_col(m, k)) continue;
        std::size_t hi = i, lo = k;
        if (row_degree(m, hi) < row_degree(m, lo)) std::swap(hi, lo);
        const std::size_t p = pivot_col(m, hi);
        const Poly q = Poly::monomial(m(hi, p).lead() / m(lo, p).lead(), row_degree(m, hi) - row_degree(m, lo));
        for (std::size_t j = 0; j < m.cols(); ++j) m(hi, j) -= q * m(lo, j);
        changed = true;
      }
  }
  return m;
}

}  // namespace detail

/// All polynomial relations of degree <= d among the series, as a basis of
/// minimal-degree rows found degree by degree. A returned row is verified only
/// to the truncation order of the inputs.
inline RelationBasis find_polynomial_relations(const std::vector<TruncSeries>& F, int d, int guard = 10) {
  RelationBasis out;
  out.n = F.size();
  out.C = PolyMatrix(0, F.size());
  if (F.empty()) return out;
  const Rat c = F.front().center();
  int K = F.front().order();
  for (const auto& s : F) {
    if (s.center() != c) throw Error("series centers differ");
    K = std::min(K, s.order());
  }
  const std::size_t n = F.size();
  if (K < static_cast<int>(n) * (d + 1) + guard) throw Error("order too small for degree bound");

  RatFunMatrix chosen(0, n);
  for (int e = 0; e <= d; ++e) {
    // Unknown (i, j): coefficient of t^j in C_i, t = z - c. Equation N: [t^N] sum C_i F_i.
    const std::size_t cols = n * static_cast<std::size_t>(e + 1);
    RatMatrix eqs(static_cast<std::size_t>(K) + 1, cols);
    for (int N = 0; N <= K; ++N)
      for (std::size_t i = 0; i < n; ++i)
        for (int j = 0; j <= std::min(e, N); ++j)
          eqs(static_cast<std::size_t>(N), i * static_cast<std::size_t>(e + 1) + static_cast<std::size_t>(j)) =
              F[i][N - j];
    for (const auto& v : nullspace(eqs)) {
      std::vector<Poly> row(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rat> cs(v.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(e + 1)),
                            v.begin() + static_cast<std::ptrdiff_t>((i + 1) * static_cast<std::size_t>(e + 1)));
        row[i] = Poly(std::move(cs)).shift(-c);
      }
      RatFunMatrix trial = chosen;
      trial.append_row(std::vector<RatFun>(row.begin(), row.end()));
      if (rank(trial) > chosen.rows()) {
        chosen = std::move(trial);
        out.C.append_row(detail::primitive_row(std::move(row)));
      }
    }
  }
  return out;
}

/// Saturates the relation module: the result spans the same Q(z)-space and
/// the gcd of its maximal minors is a nonzero constant. Each row of U*C is
/// divided by its invariant factor, then the rows are degree-reduced.
inline RelationBasis normalize_basis(const RelationBasis& B) {
  const std::size_t r = B.C.rows();
  if (r == 0) return B;
  if (rank(B.C) != r) throw Error("relation rows are dependent");
  const auto snf = smith_normal_form(B.C);
  const PolyMatrix UC = snf.U * B.C;
  PolyMatrix sat(r, B.n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < B.n; ++j) sat(i, j) = exact_div(UC(i, j), snf.invariant_factors[i]);
  sat = detail::weak_popov(std::move(sat));
  RelationBasis out;
  out.n = B.n;
  out.C = PolyMatrix(0, B.n);
  for (std::size_t i = 0; i < r; ++i) out.C.append_row(detail::primitive_row(sat.row(i)));
  return out;
}

inline std::size_t specialization_rank(const RelationBasis& B, const Rat& xi) {
  if (B.empty()) return 0;
  return rank(eval_matrix(B.C, xi));
}

/// True when alpha lies in the Q-row space of C(xi).
inline bool explains_value_relation(const RelationBasis& B, const Rat& xi, const std::vector<Rat>& alpha) {
  if (alpha.size() != B.n) throw Error("value relation length does not match basis width");
  RatMatrix m = B.empty() ? RatMatrix(0, B.n) : eval_matrix(B.C, xi);
  const std::size_t base = m.rows() ? rank(m) : 0;
  m.append_row(alpha);
  return rank(m) == base;
}

}  // namespace esing
