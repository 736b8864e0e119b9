#pragma once

#include <vector>

#include "esing/matrix.hpp"

namespace esing {

struct SmithForm {
  PolyMatrix U;  // rows x rows, unimodular
  PolyMatrix S;  // rows x cols, diagonal
  PolyMatrix V;  // cols x cols, unimodular
  std::vector<Poly> invariant_factors;  // monic, d1 | d2 | ...; only the nonzero ones
};

/// Smith normal form over Q[z] by elementary row and column operations:
/// U * M * V == S. Pivots are chosen with minimal degree.
inline SmithForm smith_normal_form(const PolyMatrix& M) {
  const std::size_t r = M.rows(), c = M.cols();
  PolyMatrix S = M, U = PolyMatrix::identity(r), V = PolyMatrix::identity(c);

  auto add_row = [&](std::size_t dst, std::size_t src, const Poly& q) {  // row dst += q * row src
    for (std::size_t j = 0; j < c; ++j) S(dst, j) += q * S(src, j);
    for (std::size_t j = 0; j < r; ++j) U(dst, j) += q * U(src, j);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Poly& q) {  // col dst += q * col src
    for (std::size_t i = 0; i < r; ++i) S(i, dst) += q * S(i, src);
    for (std::size_t i = 0; i < c; ++i) V(i, dst) += q * V(i, src);
  };

  SmithForm out;
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    for (;;) {
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (!S(i, j).is_zero() && (pi == r || S(i, j).degree() < S(pi, pj).degree())) {
            pi = i;
            pj = j;
          }
      if (pi == r) goto done;
      S.swap_rows(t, pi);
      U.swap_rows(t, pi);
      S.swap_cols(t, pj);
      V.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (S(i, t).is_zero()) continue;
        add_row(i, t, -divmod(S(i, t), S(t, t)).first);
        dirty = dirty || !S(i, t).is_zero();
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (S(t, j).is_zero()) continue;
        add_col(j, t, -divmod(S(t, j), S(t, t)).first);
        dirty = dirty || !S(t, j).is_zero();
      }
      if (dirty) continue;

      // The pivot must divide the whole trailing block.
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!divides(S(t, t), S(i, j))) {
            bad = i;
            break;
          }
      if (bad != r) {
        add_row(t, bad, Poly(1));
        continue;
      }
      const Rat inv = 1 / S(t, t).lead();
      for (std::size_t j = 0; j < c; ++j) S(t, j) *= inv;
      for (std::size_t j = 0; j < r; ++j) U(t, j) *= inv;
      out.invariant_factors.push_back(S(t, t));
      break;
    }
  }
done:
  out.U = std::move(U);
  out.S = std::move(S);
  out.V = std::move(V);
  return out;
}

}  // namespace esing
