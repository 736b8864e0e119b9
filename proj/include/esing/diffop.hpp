#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esing/diffsys.hpp"
#include "esing/relations.hpp"

namespace esing {

/// L = sum_i p_i(z) d^i with polynomial coefficients, p_order != 0.
class ScalarOperator {
 public:
  explicit ScalarOperator(std::vector<Poly> coeffs) : p_(std::move(coeffs)) {
    while (!p_.empty() && p_.back().is_zero()) p_.pop_back();
    if (p_.empty()) throw Error("zero operator");
  }

  int order() const { return static_cast<int>(p_.size()) - 1; }
  const std::vector<Poly>& coeffs() const { return p_; }
  const Poly& coeff(int i) const { return p_[static_cast<std::size_t>(i)]; }

  /// L(y); the result is known to order(y) - order(L).
  TruncSeries apply(const TruncSeries& y) const {
    const int K = y.order() - order();
    if (K < 0) throw Error("series too short for operator order");
    TruncSeries d = y;
    TruncSeries acc = TruncSeries::constant(Rat(0), y.center(), K);
    for (int i = 0; i <= order(); ++i) {
      if (!p_[static_cast<std::size_t>(i)].is_zero())
        acc = acc + TruncSeries::from_poly(p_[static_cast<std::size_t>(i)], y.center(), K) * d.truncate(K);
      if (i < order()) d = d.derivative();
    }
    return acc;
  }

  /// Divides out the polynomial gcd of the coefficients and scales to integer
  /// coefficients with content 1 and a positive leading coefficient of p_order.
  ScalarOperator content_normalized() const {
    Poly g;
    for (const auto& p : p_) g = gcd(g, p);
    std::vector<Poly> q;
    std::vector<Rat> all;
    for (const auto& p : p_) {
      q.push_back(exact_div(p, g));
      all.insert(all.end(), q.back().coeffs().begin(), q.back().coeffs().end());
    }
    Rat s = primitive_scale(all);
    if (sgn(q.back().lead()) < 0) s = -s;
    for (auto& p : q) p *= s;
    return ScalarOperator(std::move(q));
  }

  friend bool operator==(const ScalarOperator& a, const ScalarOperator& b) { return a.p_ == b.p_; }
  friend bool operator!=(const ScalarOperator& a, const ScalarOperator& b) { return !(a == b); }

 private:
  std::vector<Poly> p_;
};

inline std::string to_string(const ScalarOperator& L) {
  std::string out;
  for (int i = L.order(); i >= 0; --i) {
    if (L.coeff(i).is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(L.coeff(i)) + ")";
    if (i >= 1) out += "*D";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

/// Thrown when the combination's minimal operator has lower order than the
/// rank of the function vector and full order was required.
class DegenerateCoefficientChoice : public Error {
 public:
  DegenerateCoefficientChoice(int achieved, int expected)
      : Error("degenerate coefficient choice: achieved order " + std::to_string(achieved) + " < " +
              std::to_string(expected)),
        achieved_order(achieved),
        expected_order(expected) {}
  int achieved_order;
  int expected_order;
};

struct MinimalOperator {
  ScalarOperator op;
  std::vector<Poly> deltas;  // deltas[j] multiplies d^j; same as op.coeffs()
  int expected_order = 0;    // m = n - (number of relations)
};

namespace detail {

inline std::size_t ratfun_rank(const std::vector<std::vector<RatFun>>& rows, std::size_t n) {
  RatFunMatrix m(0, n);
  for (const auto& r : rows) m.append_row(r);
  return rows.empty() ? 0 : rank(m);
}

}  // namespace detail

/// Minimal operator annihilating F = sum a_i f_i, for solutions f of S whose
/// relation module is spanned by the rows of C. Stacks the relation rows over
/// A^0..A^mu (mu the first order at which the stack becomes dependent) and
/// reads off Delta_j = (-1)^j det(M_j), M_j being the stack without row A^j
/// restricted to a maximal set of independent columns. When mu equals the
/// rank m these are exactly the maximal minors of the (n+1) x n stack.
inline MinimalOperator minimal_combination_operator(const DiffSystem& S, const RelationBasis& C,
                                                    const std::vector<Poly>& a, bool require_full_order = false) {
  const std::size_t n = S.dim();
  if (a.size() != n) throw Error("coefficient vector length does not match system dimension");
  if (C.n != n && !C.empty()) throw Error("relation basis width does not match system dimension");
  const std::size_t r = C.rank_deficit();
  if (r > n) throw Error("more relations than functions");
  const int m = static_cast<int>(n - r);
  bool all_zero = true;
  for (const auto& p : a) all_zero = all_zero && p.is_zero();
  if (all_zero) throw Error("zero combination has no minimal operator");

  const auto deriv = combination_derivative_rows(S, a, m);
  std::vector<std::vector<RatFun>> stack;
  for (std::size_t i = 0; i < r; ++i) {
    auto row = C.C.row(i);
    stack.emplace_back(row.begin(), row.end());
  }
  if (detail::ratfun_rank(stack, n) != r) throw Error("relation rows are dependent");
  int mu = -1;
  for (int j = 0; j <= m; ++j) {
    stack.push_back(deriv[static_cast<std::size_t>(j)]);
    if (detail::ratfun_rank(stack, n) < stack.size()) {
      mu = j;
      break;
    }
  }
  if (mu < 0) throw Error("relation basis is incomplete: combination has order above the rank");
  if (require_full_order && mu < m) throw DegenerateCoefficientChoice(mu, m);

  // Choose r + mu independent columns.
  const std::size_t rows = stack.size();
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < n && cols.size() + 1 < rows; ++j) {
    std::vector<std::vector<RatFun>> sub(rows);
    auto trial = cols;
    trial.push_back(j);
    for (std::size_t i = 0; i < rows; ++i)
      for (auto c : trial) sub[i].push_back(stack[i][c]);
    if (detail::ratfun_rank(sub, trial.size()) == trial.size()) cols = std::move(trial);
  }
  std::vector<RatFun> delta(static_cast<std::size_t>(mu) + 1);
  for (int j = 0; j <= mu; ++j) {
    const std::size_t drop = r + static_cast<std::size_t>(j);
    RatFunMatrix M(rows - 1, cols.size());
    for (std::size_t i = 0, ii = 0; i < rows; ++i) {
      if (i == drop) continue;
      for (std::size_t k = 0; k < cols.size(); ++k) M(ii, k) = stack[i][cols[k]];
      ++ii;
    }
    RatFun d = cols.empty() ? RatFun(1) : determinant(M);
    delta[static_cast<std::size_t>(j)] = (j % 2) ? -d : d;
  }
  Poly den(1);
  for (const auto& d : delta) den = lcm(den, d.den());
  std::vector<Poly> polys;
  for (const auto& d : delta) polys.push_back(exact_div(d.num() * den, d.den()));
  ScalarOperator op = ScalarOperator(polys).content_normalized();
  return MinimalOperator{op, op.coeffs(), m};
}

/// L o (z - xi): applying the result to y equals applying L to (z - xi) y.
inline ScalarOperator compose_linear(const ScalarOperator& L, const Rat& xi) {
  const Poly lin = Poly::linear(xi);
  std::vector<Poly> q(static_cast<std::size_t>(L.order()) + 1);
  for (int i = 0; i <= L.order(); ++i) {
    q[static_cast<std::size_t>(i)] = lin * L.coeff(i);
    if (i < L.order()) q[static_cast<std::size_t>(i)] += Poly(static_cast<long>(i + 1)) * L.coeff(i + 1);
  }
  return ScalarOperator(std::move(q));
}

/// Polynomial coefficients A_i with A_i(xi) = alpha_i such that xi is a
/// regular point of the order-m operator of F = sum A_i f_i, i.e. the stack
/// of C(xi) and the rows A^0(xi)..A^{m-1}(xi) is invertible. The jets of A at
/// xi are raised one derivative at a time; the first coordinate direction that
/// leaves the current span gets jet value 1.
inline std::vector<Poly> construct_witness_coefficients(const DiffSystem& S, const RelationBasis& C, const Rat& xi,
                                                        const std::vector<Rat>& alpha) {
  const std::size_t n = S.dim();
  if (alpha.size() != n) throw Error("value relation length does not match system dimension");
  if (sgn(xi) == 0 || sgn(S.denominator()(xi)) == 0) throw Error("witness point must satisfy xi*T(xi) != 0");
  const std::size_t r = C.rank_deficit();
  const int m = static_cast<int>(n - r);

  RatMatrix span = r ? eval_matrix(C.C, xi) : RatMatrix(0, n);
  const std::size_t base = r ? rank(span) : 0;
  span.append_row(alpha);
  if (rank(span) != base + 1 || base != r) throw Error("relation is explained by specialization");

  std::vector<Poly> A(n);
  for (std::size_t i = 0; i < n; ++i) A[i] = Poly(alpha[i]);
  const Poly t = Poly::linear(xi);
  for (int j = 1; j < m; ++j) {
    const auto rows = combination_derivative_rows(S, A, j);
    std::vector<Rat> v;
    for (const auto& f : rows.back()) v.push_back(f(xi));
    RatMatrix trial = span;
    trial.append_row(v);
    if (rank(trial) < trial.rows()) {
      // Adding c*(z-xi)^j/j! to A_i shifts A^j(xi) by c*e_i and leaves lower rows fixed.
      std::size_t dir = n;
      for (std::size_t i = 0; i < n && dir == n; ++i) {
        RatMatrix probe = span;
        std::vector<Rat> e(n, Rat(0));
        e[i] = 1;
        probe.append_row(e);
        if (rank(probe) == probe.rows()) dir = i;
      }
      const Rat jet = 1 / factorial(static_cast<unsigned long>(j));
      A[dir] += pow(t, j) * jet;
      v[dir] += 1;
    }
    span.append_row(v);
  }

  // Self-check: A(xi) = alpha and Delta_m(xi) != 0.
  const auto rows = combination_derivative_rows(S, A, std::max(m - 1, 0));
  RatMatrix M = r ? eval_matrix(C.C, xi) : RatMatrix(0, n);
  for (int j = 0; j < m; ++j) {
    std::vector<Rat> v;
    for (const auto& f : rows[static_cast<std::size_t>(j)]) v.push_back(f(xi));
    M.append_row(v);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (A[i](xi) != alpha[i]) throw std::logic_error("witness coefficients miss the prescribed values");
  if (M.rows() != n || is_zero(determinant(M))) throw std::logic_error("witness coefficients leave xi singular");
  return A;
}

// ---------------------------------------------------------------------------
// Local analysis.

struct FrobeniusData {
  Rat point;
  Poly indicial;                               // in the exponent variable
  std::vector<std::pair<Rat, int>> exponents;  // rational roots of the indicial polynomial
  bool ordinary = false;
  bool regular = false;  // ordinary or regular singular
  bool log_involved = false;
  int holomorphic_basis_count = 0;
  std::optional<int> min_valuation;
  std::vector<TruncSeries> holomorphic_basis;  // echelon basis in powers of (z - point)
};

namespace detail {

/// Coefficient recursion of L at a point: L t^x = sum_s g_s(x) t^{x+s}.
class LocalRecurrence {
 public:
  LocalRecurrence(const ScalarOperator& L, const Rat& xi) {
    for (int i = 0; i <= L.order(); ++i) shifted_.push_back(L.coeff(i).shift(xi));
    bool first = true;
    for (int i = 0; i <= L.order(); ++i) {
      const auto& p = shifted_[static_cast<std::size_t>(i)];
      for (int l = 0; l <= p.degree(); ++l)
        if (sgn(p.coeff(l)) != 0 && (first || l - i < s0_)) {
          s0_ = l - i;
          first = false;
        }
    }
  }

  int s0() const { return s0_; }

  /// g_{s0 + k}(x)
  const Poly& g(int k) {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    const int s = s0_ + k;
    Poly out;
    for (int i = 0; i < static_cast<int>(shifted_.size()); ++i) {
      const Rat c = shifted_[static_cast<std::size_t>(i)].coeff(s + i);
      if (sgn(c) == 0) continue;
      Poly ff(1);  // x (x-1) ... (x-i+1)
      for (int q = 0; q < i; ++q) ff *= Poly::linear(Rat(q));
      out += ff * c;
    }
    return cache_.emplace(k, std::move(out)).first->second;
  }

  /// Basis of series solutions t^e sum c_N t^N whose coefficients through
  /// index E are free; the higher ones follow from the recursion.
  std::vector<std::vector<Rat>> solutions(const Rat& e, int E, int K) {
    RatMatrix eqs(static_cast<std::size_t>(E) + 1, static_cast<std::size_t>(E) + 1);
    for (int N = 0; N <= E; ++N)
      for (int k = 0; k <= N; ++k) eqs(static_cast<std::size_t>(N), static_cast<std::size_t>(k)) = g(N - k)(e + k);
    auto basis = nullspace(eqs);
    // Echelon by first nonzero index so valuations are read directly.
    auto e_rref = rref(RatMatrix(basis.size(), static_cast<std::size_t>(E) + 1, flatten(basis)));
    std::vector<std::vector<Rat>> out;
    for (std::size_t b = 0; b < e_rref.pivots.size(); ++b) {
      std::vector<Rat> c = e_rref.reduced.row(b);
      c.resize(static_cast<std::size_t>(std::max(K, E)) + 1);
      for (int N = E + 1; N <= K; ++N) {
        Rat acc = 0;
        for (int k = 0; k < N; ++k)
          if (sgn(c[static_cast<std::size_t>(k)]) != 0) acc += c[static_cast<std::size_t>(k)] * g(N - k)(e + k);
        c[static_cast<std::size_t>(N)] = -acc / g(0)(e + N);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

 private:
  static std::vector<Rat> flatten(const std::vector<std::vector<Rat>>& rows) {
    std::vector<Rat> out;
    for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
  }

  std::vector<Poly> shifted_;
  int s0_ = 0;
  std::map<int, Poly> cache_;
};

}  // namespace detail

/// Indicial data, logarithm detection and holomorphic solutions of L at xi.
/// Series solutions are built to order K; resonances beyond K are reported
/// as an error rather than guessed.
inline FrobeniusData frobenius_analyze(const ScalarOperator& L, const Rat& xi, int K) {
  FrobeniusData fd;
  fd.point = xi;
  const int r = L.order();
  detail::LocalRecurrence rec(L, xi);
  fd.indicial = rec.g(0);
  fd.ordinary = sgn(L.coeff(r)(xi)) != 0;
  fd.regular = fd.indicial.degree() == r;
  auto split = rational_roots(fd.indicial);
  fd.exponents = split.roots;

  // Holomorphic solutions: valuations are nonnegative integer exponents.
  int E = -1;
  for (const auto& [x, mult] : fd.exponents)
    if (is_integer(x) && sgn(x) >= 0) E = std::max(E, static_cast<int>(x.get_num().get_si()));
  if (E > K)
    throw Error("insufficient order: exponents 0 and " + std::to_string(E) + " exceed K=" + std::to_string(K));
  if (E >= 0) {
    for (auto& c : rec.solutions(Rat(0), E, K)) {
      int val = 0;
      while (sgn(c[static_cast<std::size_t>(val)]) == 0) ++val;
      fd.min_valuation = fd.min_valuation ? std::min(*fd.min_valuation, val) : val;
      c.resize(static_cast<std::size_t>(K) + 1);
      fd.holomorphic_basis.emplace_back(xi, std::move(c));
    }
  }
  fd.holomorphic_basis_count = static_cast<int>(fd.holomorphic_basis.size());

  if (fd.regular && !fd.ordinary) {
    // Exponents in one class mod Z: a log is forced when the class has fewer
    // series solutions than roots counted with multiplicity.
    std::vector<bool> used(fd.exponents.size(), false);
    for (std::size_t a = 0; a < fd.exponents.size(); ++a) {
      if (used[a]) continue;
      Rat lo = fd.exponents[a].first, hi = lo;
      int count = 0;
      for (std::size_t b = a; b < fd.exponents.size(); ++b) {
        if (!is_integer(Rat(fd.exponents[b].first - lo))) continue;
        used[b] = true;
        count += fd.exponents[b].second;
        lo = std::min(lo, fd.exponents[b].first);
        hi = std::max(hi, fd.exponents[b].first);
      }
      const int span = static_cast<int>(Rat(hi - lo).get_num().get_si());
      if (span > K)
        throw Error("insufficient order: exponents " + to_string(lo) + " and " + to_string(hi) + " exceed K=" +
                    std::to_string(K));
      if (static_cast<int>(rec.solutions(lo, span, span).size()) < count) fd.log_involved = true;
    }
    // Irrational exponents: repeated factors force logs; integer-spaced
    // conjugate pairs would need number-field arithmetic.
    for (const auto& [f, mult] : squarefree_factorization(split.residual)) {
      if (mult > 1) fd.log_involved = true;
      for (int k = 1; k <= K; ++k)
        if (gcd(f, f.shift(Rat(k))).degree() > 0)
          throw Error("irrational exponents differing by an integer are unsupported");
    }
  }
  return fd;
}

struct Apparency {
  bool apparent = false;
  bool all_vanish = false;
};

/// Apparent: a full basis of holomorphic solutions without logarithms.
/// all_vanish additionally requires every solution to vanish at xi.
inline Apparency is_apparent(const ScalarOperator& L, const Rat& xi, int K) {
  const auto fd = frobenius_analyze(L, xi, K);
  Apparency out;
  out.apparent = fd.regular && !fd.log_involved && fd.holomorphic_basis_count == L.order();
  out.all_vanish = out.apparent && (!fd.min_valuation || *fd.min_valuation >= 1);
  return out;
}

}  // namespace esing
