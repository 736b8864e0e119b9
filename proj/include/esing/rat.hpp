#pragma once

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <string>

namespace esing {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  Rat q{Int(num), Int(den)};
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Rat pow(const Rat& q, long e) {
  Rat base = e < 0 ? Rat(1 / q) : q;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rat out = 1;
  while (k) {
    if (k & 1) out *= base;
    base *= base;
    k >>= 1;
  }
  return out;
}

inline Rat pow(const Rat& q, int e) { return pow(q, static_cast<long>(e)); }

inline Rat factorial(unsigned long n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rat(f);
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

/// Natural log of |z|, -inf for zero. Safe for integers far beyond double range.
inline double log_abs(const Int& z) {
  if (z == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

inline double log_abs(const Rat& q) {
  if (sgn(q) == 0) return -std::numeric_limits<double>::infinity();
  return log_abs(q.get_num()) - log_abs(q.get_den());
}

}  // namespace esing
