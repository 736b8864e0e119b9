#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "esing/ratfun.hpp"

namespace esing {

/// Power series in (z - center) known exactly through degree order().
class TruncSeries {
 public:
  TruncSeries() : coeffs_{Rat(0)} {}
  TruncSeries(Rat center, std::vector<Rat> coeffs) : center_(std::move(center)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error("series needs at least one coefficient");
  }

  static TruncSeries constant(const Rat& c, const Rat& center, int order) {
    std::vector<Rat> v(static_cast<std::size_t>(order) + 1);
    v[0] = c;
    return TruncSeries(center, std::move(v));
  }

  /// Re-expands p in powers of (z - center).
  static TruncSeries from_poly(const Poly& p, const Rat& center, int order) {
    const Poly s = p.shift(center);
    std::vector<Rat> v(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= order; ++i) v[static_cast<std::size_t>(i)] = s.coeff(i);
    return TruncSeries(center, std::move(v));
  }

  const Rat& center() const { return center_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  const Rat& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

  /// Index of the first nonzero coefficient; order()+1 when all vanish.
  int valuation() const {
    for (int i = 0; i <= order(); ++i)
      if (sgn(coeffs_[static_cast<std::size_t>(i)]) != 0) return i;
    return order() + 1;
  }
  bool is_zero() const { return valuation() > order(); }

  TruncSeries truncate(int order) const {
    if (order > this->order()) throw Error("cannot extend a truncated series");
    return TruncSeries(center_, std::vector<Rat>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  TruncSeries derivative() const {
    if (order() == 0) throw Error("derivative of an order-0 series carries no information");
    std::vector<Rat> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return TruncSeries(center_, std::move(d));
  }

  /// Value of the truncation (as a polynomial in z - center) at z.
  Rat truncated_value(const Rat& z) const {
    const Rat t = z - center_;
    Rat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  TruncSeries operator-() const {
    TruncSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    check_center(a, b);
    const int k = std::min(a.order(), b.order());
    std::vector<Rat> v(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) v[static_cast<std::size_t>(i)] = a[i] + b[i];
    return TruncSeries(a.center_, std::move(v));
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    check_center(a, b);
    const int k = std::min(a.order(), b.order());
    std::vector<Rat> v(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) {
      if (sgn(a[i]) == 0) continue;
      for (int j = 0; i + j <= k; ++j) v[static_cast<std::size_t>(i + j)] += a[i] * b[j];
    }
    return TruncSeries(a.center_, std::move(v));
  }
  friend TruncSeries operator*(const Rat& s, TruncSeries a) {
    for (auto& c : a.coeffs_) c *= s;
    return a;
  }
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.center_ == b.center_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

  /// Multiplies by (z - center)^k; the known order grows by k.
  TruncSeries shift_up(int k) const {
    std::vector<Rat> v(static_cast<std::size_t>(k));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return TruncSeries(center_, std::move(v));
  }

 private:
  static void check_center(const TruncSeries& a, const TruncSeries& b) {
    if (a.center_ != b.center_) throw Error("series centers differ");
  }
  Rat center_;
  std::vector<Rat> coeffs_;
};

inline bool is_zero(const TruncSeries& s) { return s.is_zero(); }

/// Valuation-aware quotient. When b starts at (z-c)^v, a must start no lower
/// and the result is known to min(order a, order b) - v.
inline TruncSeries divide(const TruncSeries& a, const TruncSeries& b) {
  if (a.center() != b.center()) throw Error("series centers differ");
  const int v = b.valuation();
  if (v > b.order()) throw Error("indeterminate division");
  for (int i = 0; i < std::min(v, a.order() + 1); ++i)
    if (sgn(a[i]) != 0) throw Error("dividend valuation below divisor valuation");
  const int k = std::min(a.order(), b.order()) - v;
  if (k < 0) throw Error("indeterminate division");
  std::vector<Rat> q(static_cast<std::size_t>(k) + 1);
  const Rat b0 = b[v];
  for (int i = 0; i <= k; ++i) {
    Rat acc = a[i + v];
    for (int j = 1; j <= i; ++j) acc -= b[v + j] * q[static_cast<std::size_t>(i - j)];
    q[static_cast<std::size_t>(i)] = acc / b0;
  }
  return TruncSeries(a.center(), std::move(q));
}

enum class SeriesOp { add, mul, div };

inline TruncSeries series_arith(const TruncSeries& a, const TruncSeries& b, SeriesOp op) {
  switch (op) {
    case SeriesOp::add:
      return a + b;
    case SeriesOp::mul:
      return a * b;
    case SeriesOp::div:
      return divide(a, b);
  }
  throw Error("unknown series operation");
}

/// Taylor expansion of f at center through degree order.
inline TruncSeries expand_ratfun(const RatFun& f, const Rat& center, int order) {
  if (sgn(f.den()(center)) == 0) throw Error("pole at expansion point");
  return divide(TruncSeries::from_poly(f.num(), center, order), TruncSeries::from_poly(f.den(), center, order));
}

}  // namespace esing
