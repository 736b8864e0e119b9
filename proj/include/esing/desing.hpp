#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "esing/diffsys.hpp"
#include "esing/efunc.hpp"
#include "esing/relations.hpp"

namespace esing {

/// One removal of a Wronskian zero at alpha: w = D^{-1} M y with
/// D = diag(z - alpha, 1, ..., 1), i.e. a gauge by P = M^{-1} D.
struct DesingStep {
  Rat alpha;
  int pole_order = 0;  // k: pole order of A at alpha before the step
  RatMatrix M;         // constant, invertible; first row annihilates f(alpha)
  std::size_t D_index = 0;
  int wronskian_before = 0;
  int wronskian_after = 0;
  DiffSystem before;
  DiffSystem after;
};

struct DesingResult {
  PolyMatrix B;  // f = B e
  DiffSystem final_system;
  std::vector<EFunction> e_functions;
  std::vector<DesingStep> steps;
  int z_power = 0;  // final denominator is z^z_power
};

struct DesingOptions {
  int order = 50;            // series order for the f = B e and solution checks
  int degree = 8;            // degree bound for the independence check
  std::size_t k_check = 60;  // partial-sum order certifying f(alpha) = 0
  bool check_independence = true;
};

namespace detail {

/// Appends standard basis vectors greedily to complete `first` to a basis.
inline RatMatrix complete_to_basis(const std::vector<Rat>& first) {
  const std::size_t n = first.size();
  RatMatrix M(0, n);
  M.append_row(first);
  for (std::size_t i = 0; i < n && M.rows() < n; ++i) {
    std::vector<Rat> e(n, Rat(0));
    e[i] = 1;
    RatMatrix trial = M;
    trial.append_row(e);
    if (rank(trial) == trial.rows()) M = std::move(trial);
  }
  return M;
}

inline std::vector<TruncSeries> series_vector(const std::vector<EFunction>& f, int order) {
  std::vector<TruncSeries> out;
  for (const auto& g : f) out.push_back(g.series(order));
  return out;
}

inline bool solves(const DiffSystem& S, const std::vector<EFunction>& f, int order) {
  for (const auto& r : cleared_residual(S, series_vector(f, order)))
    if (!r.is_zero()) return false;
  return true;
}

}  // namespace detail

/// Removes one unit of Wronskian vanishing at alpha. Rows of
/// ((z-alpha)^k A)(alpha) annihilate f(alpha); the first nonzero one seeds M,
/// and the first component of M f is divided by (z - alpha).
inline std::pair<DesingStep, std::vector<EFunction>> remove_singularity_step(const DiffSystem& S,
                                                                           const std::vector<EFunction>& f,
                                                                           const Rat& alpha,
                                                                           const DesingOptions& opt = {}) {
  const std::size_t n = S.dim();
  if (f.size() != n) throw Error("function vector length does not match system dimension");
  if (sgn(alpha) == 0) throw Error("singularity removal at the origin is not supported");
  const int k = S.pole_order(alpha);
  if (k == 0) throw Error("no pole at " + to_string(alpha));
  const int w = wronskian_order(S, alpha);
  if (w < 1) throw Error("wronskian does not vanish at " + to_string(alpha));

  const Poly lin = Poly::linear(alpha);
  const Poly lin_k = pow(lin, k);
  const RatMatrix At = S.matrix().map([&](const RatFun& e) { return RatFun(e.num() * lin_k, e.den())(alpha); });
  std::vector<Rat> v;
  for (std::size_t i = 0; i < n && v.empty(); ++i) {
    auto row = At.row(i);
    for (const auto& x : row)
      if (sgn(x) != 0) {
        v = row;
        break;
      }
  }
  if (v.empty()) throw Error("pole order overcounted");

  DesingStep step{alpha, k, detail::complete_to_basis(v), 0, w, 0, S, S};
  RatFunMatrix D = RatFunMatrix::identity(n);
  D(0, 0) = RatFun(lin);
  const RatFunMatrix P = to_ratfun(inverse(step.M)) * D;
  step.after = gauge_transform(S, P);
  step.wronskian_after = wronskian_order(step.after, alpha);
  if (step.wronskian_after != w - 1) throw std::logic_error("wronskian order did not drop by one");

  std::vector<EFunction> g;
  for (std::size_t i = 0; i < n; ++i) {
    auto mixed = linear_combination(step.M.row(i), f);
    g.push_back(i == 0 ? divide_by_linear(mixed, alpha, opt.k_check) : mixed);
  }
  return {std::move(step), std::move(g)};
}

/// Rational nonzero singular points in processing order: ascending by
/// |numerator| + denominator, positive before negative.
inline std::vector<Rat> desing_points(const DiffSystem& S) {
  const auto locus = singular_locus(S);
  if (!locus.residual_factors.empty())
    throw Error("non-rational singularity unsupported: " + to_string(locus.residual_factors.front().first));
  std::vector<Rat> pts;
  for (const auto& [p, mult] : locus.rational_points)
    if (sgn(p) != 0) pts.push_back(p);
  std::sort(pts.begin(), pts.end(), [](const Rat& a, const Rat& b) {
    const Int ha = abs(a.get_num()) + a.get_den(), hb = abs(b.get_num()) + b.get_den();
    if (ha != hb) return ha < hb;
    return sgn(a) > sgn(b);
  });
  return pts;
}

/// Strips every nonzero singularity: returns a polynomial B and E-functions e
/// with f = B e, e solving a system whose only pole is z = 0.
inline DesingResult desingularize(const DiffSystem& S, const std::vector<EFunction>& f, const DesingOptions& opt = {}) {
  const std::size_t n = S.dim();
  if (f.size() != n) throw Error("function vector length does not match system dimension");
  if (!detail::solves(S, f, opt.order)) throw Error("functions do not solve the system");
  if (opt.check_independence) {
    const auto rel = find_polynomial_relations(detail::series_vector(f, opt.order), opt.degree);
    if (!rel.empty()) throw Error("hypothesis violated: relations found");
  }
  const auto points = desing_points(S);

  DesingResult res{PolyMatrix::identity(n), S, f, {}, 0};
  for (const auto& alpha : points) {
    const int w0 = wronskian_order(res.final_system, alpha);
    int done = 0;
    while (res.final_system.pole_order(alpha) > 0) {
      if (wronskian_order(res.final_system, alpha) == 0)
        throw Error("non-apparent singularity structure at " + to_string(alpha));
      auto [step, g] = remove_singularity_step(res.final_system, res.e_functions, alpha, opt);
      RatFunMatrix D = RatFunMatrix::identity(n);
      D(0, 0) = RatFun(Poly::linear(alpha));
      res.B = res.B * to_poly(to_ratfun(inverse(step.M)) * D);
      res.final_system = step.after;
      res.e_functions = std::move(g);
      res.steps.push_back(std::move(step));
      ++done;
    }
    if (done != w0) throw std::logic_error("step count differs from wronskian order at " + to_string(alpha));
  }
  const auto& T = res.final_system.denominator();
  res.z_power = T.degree();
  if (T != pow(Poly::z(), res.z_power)) throw std::logic_error("final system keeps a pole away from the origin");
  return res;
}

}  // namespace esing
