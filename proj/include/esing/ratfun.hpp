#pragma once

#include <string>
#include <utility>

#include "esing/poly.hpp"

namespace esing {

/// Quotient of polynomials over Q, kept reduced with a monic denominator.
class RatFun {
 public:
  RatFun() : den_(1) {}
  RatFun(long c) : num_(c), den_(1) {}
  RatFun(const Rat& c) : num_(c), den_(1) {}
  RatFun(Poly p) : num_(std::move(p)), den_(1) {}
  RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  Rat operator()(const Rat& x) const {
    const Rat d = den_(x);
    if (sgn(d) == 0) throw Error("pole at evaluation point " + to_string(x));
    return num_(x) / d;
  }

  RatFun derivative() const {
    return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  /// Order of the pole at a (0 when a is not a pole).
  int pole_order(const Rat& a) const {
    if (is_zero()) return 0;
    return den_.root_multiplicity(a);
  }

  /// Coefficient of (z-a)^{-1} in the Laurent expansion at a.
  Rat residue(const Rat& a) const;

  RatFun operator-() const { return RatFun(-num_, den_, Normalized{}); }
  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_polynomial() && b.is_polynomial()) return RatFun(a.num_ * b.num_, Poly(1), Normalized{});
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw Error("division by the zero rational function");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }
  friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

 private:
  struct Normalized {};
  RatFun(Poly num, Poly den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_.is_zero()) throw Error("division by the zero polynomial");
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    const Rat lc = den_.lead();
    if (lc != 1) {
      num_ *= Rat(1 / lc);
      den_ *= Rat(1 / lc);
    }
  }

  Poly num_;
  Poly den_;
};

inline bool is_zero(const RatFun& f) { return f.is_zero(); }

inline Rat RatFun::residue(const Rat& a) const {
  const int k = pole_order(a);
  if (k == 0) return Rat(0);
  // f = N / ((z-a)^k h): residue is the (k-1)-th Taylor coefficient of N/h at a.
  Poly h = exact_div(den_, pow(Poly::linear(a), k));
  Poly ns = num_.shift(a);
  Poly hs = h.shift(a);
  std::vector<Rat> q(static_cast<std::size_t>(k));
  const Rat h0 = hs.coeff(0);
  for (int i = 0; i < k; ++i) {
    Rat acc = ns.coeff(i);
    for (int j = 1; j <= i; ++j) acc -= hs.coeff(j) * q[static_cast<std::size_t>(i - j)];
    q[static_cast<std::size_t>(i)] = acc / h0;
  }
  return q.back();
}

inline std::string to_string(const RatFun& f, char var = 'z') {
  if (f.is_polynomial()) return to_string(f.num(), var);
  return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

}  // namespace esing
