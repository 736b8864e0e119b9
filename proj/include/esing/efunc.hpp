#pragma once

#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "esing/ratfun.hpp"
#include "esing/series.hpp"

namespace esing {

/// Exact coefficient generator k -> a_k. Values are memoized; compute(k) is
/// called in increasing k under the lock and may read earlier values through
/// cached().
class CoefficientStream {
 public:
  virtual ~CoefficientStream() = default;

  Rat coeff(std::size_t k) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (memo_.size() <= k) memo_.push_back(compute(memo_.size()));
    return memo_[k];
  }

 protected:
  virtual Rat compute(std::size_t k) const = 0;
  const Rat& cached(std::size_t j) const { return memo_[j]; }

 private:
  mutable std::mutex mu_;
  mutable std::vector<Rat> memo_;
};

/// f(z) = sum_k a_k z^k / k! with exact rational a_k.
class EFunction {
 public:
  EFunction(std::string name, std::shared_ptr<const CoefficientStream> stream)
      : name_(std::move(name)), stream_(std::move(stream)) {}

  const std::string& name() const { return name_; }
  Rat coeff(std::size_t k) const { return stream_->coeff(k); }

  std::vector<Rat> coefficients(std::size_t K) const {
    std::vector<Rat> out;
    out.reserve(K + 1);
    for (std::size_t k = 0; k <= K; ++k) out.push_back(coeff(k));
    return out;
  }

  /// Taylor series at 0 through degree K: coefficients a_k / k!.
  TruncSeries series(int K) const {
    std::vector<Rat> v;
    Rat fact = 1;
    for (int k = 0; k <= K; ++k) {
      if (k > 0) fact *= k;
      v.push_back(coeff(static_cast<std::size_t>(k)) / fact);
    }
    return TruncSeries(Rat(0), std::move(v));
  }

  /// sum_{k<=K} a_k x^k / k!
  Rat partial_sum(const Rat& x, std::size_t K) const {
    Rat acc = 0, term = 1;
    for (std::size_t k = 0; k <= K; ++k) {
      if (k > 0) term = term * x / static_cast<unsigned long>(k);
      acc += coeff(k) * term;
    }
    return acc;
  }

 private:
  std::string name_;
  std::shared_ptr<const CoefficientStream> stream_;
};

namespace streams {

class Exp final : public CoefficientStream {
 public:
  explicit Exp(Rat c) : c_(std::move(c)) {}

 protected:
  Rat compute(std::size_t k) const override { return k == 0 ? Rat(1) : Rat(cached(k - 1) * c_); }

 private:
  Rat c_;
};

/// p(z) e^{cz}
class PolyExp final : public CoefficientStream {
 public:
  PolyExp(Poly p, Rat c) : p_(std::move(p)), c_(std::move(c)) {}

 protected:
  Rat compute(std::size_t k) const override {
    // a_k = sum_j p_j c^{k-j} k!/(k-j)!
    Rat acc = 0;
    for (int j = 0; j <= p_.degree() && static_cast<std::size_t>(j) <= k; ++j) {
      Int falling = 1;
      for (std::size_t q = 0; q < static_cast<std::size_t>(j); ++q) falling *= static_cast<unsigned long>(k - q);
      acc += p_.coeff(j) * pow(c_, static_cast<long>(k) - j) * Rat(falling);
    }
    return acc;
  }

 private:
  Poly p_;
  Rat c_;
};

/// a[k+r] = sum_{i<r} q_i(k) a[k+i], with initial values a_0..a_{r-1}.
class Recurrence final : public CoefficientStream {
 public:
  Recurrence(std::vector<RatFun> q, std::vector<Rat> init) : q_(std::move(q)), init_(std::move(init)) {
    if (q_.size() != init_.size() || q_.empty()) throw Error("recurrence needs as many initial values as its order");
  }

 protected:
  Rat compute(std::size_t k) const override {
    const std::size_t r = q_.size();
    if (k < r) return init_[k];
    const Rat base(static_cast<long>(k - r));
    Rat acc = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (q_[i].is_zero()) continue;
      if (sgn(q_[i].den()(base)) == 0)
        throw Error("recurrence coefficient has a pole at k=" + std::to_string(k - r));
      acc += q_[i](base) * cached(k - r + i);
    }
    return acc;
  }

 private:
  std::vector<RatFun> q_;
  std::vector<Rat> init_;
};

class Scaled final : public CoefficientStream {
 public:
  Scaled(EFunction f, Rat xi) : f_(std::move(f)), xi_(std::move(xi)) {}

 protected:
  Rat compute(std::size_t k) const override { return f_.coeff(k) * pow(xi_, static_cast<long>(k)); }

 private:
  EFunction f_;
  Rat xi_;
};

/// Binomial convolution c_k = sum_j C(k,j) a_j b_{k-j}.
class Product final : public CoefficientStream {
 public:
  Product(EFunction f, EFunction g) : f_(std::move(f)), g_(std::move(g)) {}

 protected:
  Rat compute(std::size_t k) const override {
    Rat acc = 0;
    for (std::size_t j = 0; j <= k; ++j) acc += Rat(binomial(k, j)) * f_.coeff(j) * g_.coeff(k - j);
    return acc;
  }

 private:
  EFunction f_, g_;
};

class LinearCombination final : public CoefficientStream {
 public:
  LinearCombination(std::vector<Rat> w, std::vector<EFunction> fs) : w_(std::move(w)), fs_(std::move(fs)) {}

 protected:
  Rat compute(std::size_t k) const override {
    Rat acc = 0;
    for (std::size_t i = 0; i < fs_.size(); ++i)
      if (sgn(w_[i]) != 0) acc += w_[i] * fs_[i].coeff(k);
    return acc;
  }

 private:
  std::vector<Rat> w_;
  std::vector<EFunction> fs_;
};

/// p(z) f(z): z^j f contributes k!/(k-j)! a_{k-j}.
class PolyTimes final : public CoefficientStream {
 public:
  PolyTimes(Poly p, EFunction f) : p_(std::move(p)), f_(std::move(f)) {}

 protected:
  Rat compute(std::size_t k) const override {
    Rat acc = 0;
    Int falling = 1;
    for (int j = 0; j <= p_.degree() && static_cast<std::size_t>(j) <= k; ++j) {
      if (j > 0) falling *= static_cast<unsigned long>(k - static_cast<std::size_t>(j) + 1);
      if (sgn(p_.coeff(j)) != 0) acc += p_.coeff(j) * Rat(falling) * f_.coeff(k - static_cast<std::size_t>(j));
    }
    return acc;
  }

 private:
  Poly p_;
  EFunction f_;
};

class Derivative final : public CoefficientStream {
 public:
  explicit Derivative(EFunction f) : f_(std::move(f)) {}

 protected:
  Rat compute(std::size_t k) const override { return f_.coeff(k + 1); }

 private:
  EFunction f_;
};

/// f(z) / (z - xi). For xi != 0: g_n = (n g_{n-1} - a_n) / xi, the
/// factorial-scaled form of g_n/n! = -sum_{k<=n} a_k xi^{k-n-1} / k!.
/// For xi = 0: g_n = a_{n+1} / (n+1).
class DivLinear final : public CoefficientStream {
 public:
  DivLinear(EFunction f, Rat xi) : f_(std::move(f)), xi_(std::move(xi)) {}

 protected:
  Rat compute(std::size_t n) const override {
    if (sgn(xi_) == 0) return f_.coeff(n + 1) / static_cast<unsigned long>(n + 1);
    const Rat prev = n == 0 ? Rat(0) : Rat(cached(n - 1) * static_cast<unsigned long>(n));
    return (prev - f_.coeff(n)) / xi_;
  }

 private:
  EFunction f_;
  Rat xi_;
};

}  // namespace streams

// ---------------------------------------------------------------------------
// Builtins and arithmetic.

inline EFunction exp_function(const Rat& c) {
  return EFunction("exp(" + to_string(c) + ")", std::make_shared<streams::Exp>(c));
}

inline EFunction poly_exp(const Poly& p, const Rat& c) {
  return EFunction("poly(" + to_string(p) + ")*exp(" + to_string(c) + ")", std::make_shared<streams::PolyExp>(p, c));
}

inline EFunction recurrence_function(std::string name, std::vector<RatFun> q, std::vector<Rat> init) {
  return EFunction(std::move(name), std::make_shared<streams::Recurrence>(std::move(q), std::move(init)));
}

/// cos(z): a_{k+2} = -a_k, a_0 = 1, a_1 = 0.
inline EFunction cos_function() {
  return recurrence_function("cos", {RatFun(-1), RatFun(0)}, {Rat(1), Rat(0)});
}

/// sin(z): a_{k+2} = -a_k, a_0 = 0, a_1 = 1.
inline EFunction sin_function() {
  return recurrence_function("sin", {RatFun(-1), RatFun(0)}, {Rat(0), Rat(1)});
}

/// sum_k (-1)^k C(2k,k) z^{2k}/(2k)!, i.e. J0(2z): a_{k+2} = -4(k+1)/(k+2) a_k.
inline EFunction bessel_type_function() {
  const Poly k = Poly::z();
  return recurrence_function("bessel0", {RatFun(Poly(-4) * (k + Poly(1)), k + Poly(2)), RatFun(0)},
                             {Rat(1), Rat(0)});
}

/// f(xi z)
inline EFunction scale_argument(const EFunction& f, const Rat& xi) {
  if (sgn(xi) == 0) throw Error("scaling by zero");
  return EFunction(f.name() + "@(" + to_string(xi) + "*z)", std::make_shared<streams::Scaled>(f, xi));
}

inline EFunction product(const EFunction& f, const EFunction& g) {
  return EFunction("(" + f.name() + ")*(" + g.name() + ")", std::make_shared<streams::Product>(f, g));
}

inline EFunction linear_combination(const std::vector<Rat>& w, const std::vector<EFunction>& fs) {
  if (w.size() != fs.size()) throw Error("weight count does not match function count");
  std::string name;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (sgn(w[i]) == 0) continue;
    if (!name.empty()) name += "+";
    name += "(" + to_string(w[i]) + ")*" + fs[i].name();
  }
  if (name.empty()) name = "0";
  return EFunction(name, std::make_shared<streams::LinearCombination>(w, fs));
}

inline EFunction multiply(const Poly& p, const EFunction& f) {
  return EFunction("(" + to_string(p) + ")*" + f.name(), std::make_shared<streams::PolyTimes>(p, f));
}

inline EFunction derivative(const EFunction& f) {
  return EFunction("(" + f.name() + ")'", std::make_shared<streams::Derivative>(f));
}

/// sum_j p_j(z) f_j(z)
inline EFunction combine(const std::vector<Poly>& p, const std::vector<EFunction>& fs) {
  if (p.size() != fs.size()) throw Error("coefficient count does not match function count");
  std::vector<EFunction> terms;
  for (std::size_t j = 0; j < fs.size(); ++j)
    if (!p[j].is_zero()) terms.push_back(p[j].degree() == 0 ? linear_combination({p[j].coeff(0)}, {fs[j]}) : multiply(p[j], fs[j]));
  if (terms.empty()) return linear_combination({Rat(0)}, {fs.front()});
  if (terms.size() == 1) return terms.front();
  return linear_combination(std::vector<Rat>(terms.size(), Rat(1)), terms);
}

// ---------------------------------------------------------------------------
// Growth diagnostics.

/// Geometric envelope |x_k| <= B C^k (k <= K), stored as logarithms.
struct GeometricFit {
  double log_B = -INFINITY;
  double log_C = 0;
  double B() const { return std::exp(log_B); }
  double C() const { return std::exp(log_C); }
};

/// C comes from the growth of the running maximum between K/2 and K, floored
/// at 1; B is then the smallest constant making the envelope hold on 0..K.
inline GeometricFit fit_geometric(const std::vector<double>& log_abs_values) {
  GeometricFit fit;
  const std::size_t K = log_abs_values.size() - 1;
  std::vector<double> run(K + 1);
  double m = -INFINITY;
  for (std::size_t k = 0; k <= K; ++k) run[k] = m = std::max(m, log_abs_values[k]);
  const std::size_t h = K / 2;
  if (run[K] == -INFINITY) return fit;
  if (K > h && run[h] > -INFINITY) {
    fit.log_C = std::max(0.0, (run[K] - run[h]) / static_cast<double>(K - h));
  } else {
    for (std::size_t k = 1; k <= K; ++k)
      if (log_abs_values[k] > -INFINITY)
        fit.log_C = std::max(fit.log_C, log_abs_values[k] / static_cast<double>(k));
  }
  for (std::size_t k = 0; k <= K; ++k)
    fit.log_B = std::max(fit.log_B, log_abs_values[k] - static_cast<double>(k) * fit.log_C);
  return fit;
}

struct GrowthReport {
  std::size_t K = 0;
  GeometricFit coeff;        // |a_k| <= B C^k
  GeometricFit denominator;  // lcm(den a_0..a_k) <= B1 C1^k
  double C_half = 1;         // coefficient C fitted on 0..K/2
  double hmax = 0;           // max_k h(a_0..a_k) / k
  double h_slope = 0;        // h(a_0..a_K) / K
  bool superexponential = false;
};

/// Diagnostic fit of the E-function growth conditions on a_0..a_K. Never a proof.
inline GrowthReport growth_report(const EFunction& f, std::size_t K) {
  if (K < 10) throw Error("growth report needs K >= 10");
  GrowthReport rep;
  rep.K = K;
  std::vector<double> la, ld;
  Int den = 1;
  const auto a = f.coefficients(K);
  for (std::size_t k = 0; k <= K; ++k) {
    la.push_back(log_abs(a[k]));
    den = lcm(den, Int(a[k].get_den()));
    ld.push_back(log_abs(den));
    // h(a_0..a_k) = log max(|N_j|, den) with a_j = N_j / den.
    Int top = den;
    for (std::size_t j = 0; j <= k; ++j) {
      Int N = abs(Int(a[j].get_num() * (den / a[j].get_den())));
      if (N > top) top = N;
    }
    const double h = log_abs(top);
    if (k > 0) rep.hmax = std::max(rep.hmax, h / static_cast<double>(k));
    if (k == K) rep.h_slope = h / static_cast<double>(K);
  }
  rep.coeff = fit_geometric(la);
  rep.denominator = fit_geometric(ld);
  rep.C_half = fit_geometric(std::vector<double>(la.begin(), la.begin() + static_cast<std::ptrdiff_t>(K / 2 + 1))).C();
  rep.superexponential = rep.coeff.C() > 1.05 * rep.C_half;
  return rep;
}

/// log of B (C|x|)^{K+1} / (K+1)! * e^{C|x|}, a bound for the tail
/// sum_{k>K} |a_k| |x|^k / k! when |a_k| <= B C^k.
inline double log_tail_bound(const GeometricFit& fit, const Rat& x, std::size_t K) {
  const double lx = log_abs(x);
  const double cx = std::exp(fit.log_C + lx);
  return fit.log_B + static_cast<double>(K + 1) * (fit.log_C + lx) - std::lgamma(static_cast<double>(K) + 2.0) + cx;
}

struct ValueCertificate {
  Rat partial;           // sum_{k<=K} a_k x^k / k!
  double log_abs_partial;
  double log_tail;       // log of the tail bound
  bool certified_nonzero() const { return log_abs_partial > log_tail; }
  bool within_tail() const { return log_abs_partial <= log_tail; }
};

/// Partial sum at x with a tail bound from the envelope fitted on 0..2K.
inline ValueCertificate certify_value(const EFunction& f, const Rat& x, std::size_t K) {
  std::vector<double> la;
  for (std::size_t k = 0; k <= 2 * K; ++k) la.push_back(log_abs(f.coeff(k)));
  const auto fit = fit_geometric(la);
  ValueCertificate vc;
  vc.partial = f.partial_sum(x, K);
  vc.log_abs_partial = log_abs(vc.partial);
  vc.log_tail = fit.log_B == -INFINITY ? -INFINITY : log_tail_bound(fit, x, K);
  return vc;
}

/// g with f = (z - xi) g. The vanishing f(xi) = 0 is certified against the
/// tail bound before the quotient stream is built.
inline EFunction divide_by_linear(const EFunction& f, const Rat& xi, std::size_t K_check = 60) {
  if (sgn(xi) == 0) {
    if (sgn(f.coeff(0)) != 0) throw Error("f(0) != 0: not divisible by z");
  } else {
    const auto vc = certify_value(f, xi, K_check);
    if (!vc.within_tail()) throw Error("f(xi) not numerically zero within certified tail bound");
  }
  return EFunction("(" + f.name() + ")/(" + to_string(Poly::linear(xi)) + ")",
                   std::make_shared<streams::DivLinear>(f, xi));
}

}  // namespace esing
