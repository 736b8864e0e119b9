#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "esing/poly.hpp"

namespace esing {

namespace detail {

inline Int pollard_brent(const Int& n) {
  if (n % 2 == 0) return Int(2);
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1, q = 1, ys;
    const unsigned long m = 64;
    auto f = [&](const Int& v) -> Int { return Int((v * v + c) % n); };
    unsigned long r = 1;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(Int(x - y))) % n;
        }
        d = gcd(q, n);
        k += m;
      } while (k < r && d == 1);
      r *= 2;
    } while (d == 1);
    if (d == n) {
      do {
        ys = f(ys);
        d = gcd(abs(Int(x - ys)), n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

inline void factor_into(Int n, std::map<Int, int>& out) {
  if (n <= 1) return;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
    while (n % p == 0) {
      ++out[Int(p)];
      n /= p;
    }
  }
  for (unsigned long p = 41; p < 10000 && Int(p) * p <= n; p += 2) {
    while (n % p == 0) {
      ++out[Int(p)];
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    ++out[n];
    return;
  }
  Int d = pollard_brent(n);
  factor_into(d, out);
  factor_into(Int(n / d), out);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0).
inline std::map<Int, int> factor_integer(const Int& n) {
  std::map<Int, int> out;
  detail::factor_into(abs(n), out);
  return out;
}

/// Positive divisors of |n| (n != 0), ascending.
inline std::vector<Int> divisors(const Int& n) {
  std::vector<Int> out{Int(1)};
  for (const auto& [p, e] : factor_integer(n)) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct RootSplit {
  std::vector<std::pair<Rat, int>> roots;  // ascending, with multiplicity
  Poly residual;                           // no rational roots
};

/// Splits off all rational roots: p = residual * prod (z - r)^m exactly.
inline RootSplit rational_roots(const Poly& p) {
  if (p.is_zero()) throw Error("zero polynomial");
  RootSplit out;
  std::vector<Rat> found;
  Poly q = p;
  if (sgn(q.coeff(0)) == 0) found.push_back(Rat(0));
  while (sgn(q.coeff(0)) == 0 && q.degree() > 0) q = exact_div(q, Poly::z());

  // Candidates come from the squarefree integer-primitive part.
  Poly sq = q.degree() > 0 ? exact_div(q, gcd(q, q.derivative())) : q;
  sq = primitive_part(sq);
  if (sq.degree() == 1) {
    found.push_back(Rat(-sq.coeff(0) / sq.coeff(1)));
  } else if (sq.degree() > 1) {
    auto nums = divisors(sq.coeff(0).get_num());
    auto dens = divisors(sq.lead().get_num());
    for (const auto& b : dens) {
      for (const auto& a : nums) {
        if (gcd(a, b) != 1) continue;
        for (int s : {1, -1}) {
          Rat r{Int(s * a), b};
          r.canonicalize();
          if (sgn(sq(r)) == 0) {
            found.push_back(r);
            sq = exact_div(sq, Poly::linear(r));
          }
        }
        if (sq.degree() <= 0) break;
      }
      if (sq.degree() <= 0) break;
    }
  }
  std::sort(found.begin(), found.end());
  Poly residual = p;
  for (const auto& r : found) {
    int m = 0;
    const Poly lin = Poly::linear(r);
    while (residual.degree() > 0 && sgn(residual(r)) == 0) {
      residual = exact_div(residual, lin);
      ++m;
    }
    out.roots.emplace_back(r, m);
  }
  out.residual = residual;
  return out;
}

}  // namespace esing
