#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "esing/error.hpp"
#include "esing/rat.hpp"

namespace esing {

/// Dense univariate polynomial over Q, lowest degree first.
/// The zero polynomial is the empty coefficient sequence; otherwise the
/// leading coefficient is nonzero.
class Poly {
 public:
  Poly() = default;
  Poly(long c) : Poly(Rat(c)) {}
  Poly(const Rat& c) {
    if (sgn(c) != 0) {
      c_.push_back(c);
      c_.back().canonicalize();
    }
  }
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    for (auto& x : c_) x.canonicalize();
    trim();
  }

  static Poly z() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }
  static Poly monomial(const Rat& c, int deg) {
    if (sgn(c) == 0) return {};
    std::vector<Rat> v(static_cast<std::size_t>(deg) + 1);
    v.back() = c;
    return Poly(std::move(v));
  }
  /// z - a
  static Poly linear(const Rat& a) { return Poly(std::vector<Rat>{Rat(-a), Rat(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : Rat(0);
  }
  Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

  Rat operator()(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(d));
  }

  Poly monic() const {
    if (is_zero()) return {};
    return *this * Rat(1 / lead());
  }

  /// p(z + a)
  Poly shift(const Rat& a) const {
    Poly out;
    Poly zp = Poly(std::vector<Rat>{a, Rat(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * zp + Poly(*it);
    return out;
  }

  /// Multiplicity of a as a root.
  int root_multiplicity(const Rat& a) const;

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Rat& s) {
    if (sgn(s) == 0) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
  friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
  friend Poly operator*(Poly a, long s) { return a *= Rat(s); }
  friend Poly operator*(long s, Poly a) { return a *= Rat(s); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

/// Euclidean division: a = q*b + r with deg r < deg b.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error("division by zero polynomial");
  std::vector<Rat> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rat> q(static_cast<std::size_t>(a.degree() - db) + 1);
  const Rat inv = 1 / b.lead();
  for (int i = a.degree(); i >= db; --i) {
    const Rat c = r[static_cast<std::size_t>(i)] * inv;
    q[static_cast<std::size_t>(i - db)] = c;
    if (sgn(c) == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(q)), Poly(std::move(r))};
}

inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

/// Division that must be exact.
inline Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error("inexact polynomial division");
  return q;
}

inline bool divides(const Poly& d, const Poly& a) { return (a % d).is_zero(); }

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

inline Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return exact_div(a * b, gcd(a, b)).monic();
}

inline Poly pow(const Poly& p, int e) {
  Poly out(1);
  for (int i = 0; i < e; ++i) out *= p;
  return out;
}

inline int Poly::root_multiplicity(const Rat& a) const {
  if (is_zero()) throw Error("zero polynomial");
  int m = 0;
  Poly p = *this;
  const Poly lin = linear(a);
  while (sgn(p(a)) == 0) {
    p = exact_div(p, lin);
    ++m;
  }
  return m;
}

/// Scalar that makes p integral with coprime coefficients and positive lead.
inline Rat primitive_scale(const std::vector<Rat>& coeffs) {
  Int den = 1, num = 0;
  for (const auto& c : coeffs) {
    if (sgn(c) == 0) continue;
    den = lcm(den, Int(c.get_den()));
    num = gcd(num, Int(c.get_num()));
  }
  if (num == 0) return Rat(1);
  Rat s{den, num};
  s.canonicalize();
  return s;
}

inline Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  Poly q = p * primitive_scale(p.coeffs());
  return sgn(q.lead()) < 0 ? -q : q;
}

/// Human-readable form, highest degree first: "z^2-3/2*z+1".
inline std::string to_string(const Poly& p, char var = 'z') {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Rat& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    const Rat a = abs(c);
    if (neg)
      out += "-";
    else if (!out.empty())
      out += "+";
    std::string mono;
    if (i >= 1) mono = std::string(1, var);
    if (i >= 2) mono += "^" + std::to_string(i);
    if (i == 0)
      out += to_string(a);
    else if (a == 1)
      out += mono;
    else
      out += to_string(a) + "*" + mono;
  }
  return out;
}

/// Yun's algorithm; returns monic squarefree factors with multiplicities.
inline std::vector<std::pair<Poly, int>> squarefree_factorization(const Poly& p) {
  std::vector<std::pair<Poly, int>> out;
  if (p.degree() < 1) return out;
  Poly f = p.monic();
  Poly a = gcd(f, f.derivative());
  Poly b = exact_div(f, a);
  Poly c = exact_div(f.derivative(), a);
  Poly d = c - b.derivative();
  int i = 1;
  while (b.degree() >= 1) {
    Poly g = gcd(b, d);
    b = exact_div(b, g);
    c = exact_div(d, g);
    if (g.degree() >= 1) out.emplace_back(g.monic(), i);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

}  // namespace esing
