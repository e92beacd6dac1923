#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "specforge/errors.hpp"

namespace specforge {

// Expression templates off: every operation yields a concrete value, which
// keeps deduction in generic code unsurprising. Desk-scale sizes don't miss
// the temporaries.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Int num(const Rat& q) { return numerator(q); }
inline Int den(const Rat& q) { return denominator(q); }

inline Rat make_rat(Int n, Int d) {
  if (d == 0) fail(ErrorKind::Domain, "zero denominator");
  if (d < 0) { n = -n; d = -d; }
  Rat r(std::move(n));
  return r / Rat(std::move(d));
}

inline Int ipow(Int base, unsigned e) {
  Int r = 1;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

inline Int mod_reduce(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

// Representative in (-m/2, m/2].
inline Int balanced_mod(const Int& a, const Int& m) {
  Int r = mod_reduce(a, m);
  if (2 * r > m) r -= m;
  return r;
}

inline Int mod_pow(Int base, Int e, const Int& m) {
  Int r = 1;
  base = mod_reduce(base, m);
  while (e > 0) {
    if (bit_test(e, 0)) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return r;
}

// Extended gcd: returns g = gcd(a, b) and x, y with a*x + b*y = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int old_r = a, r = b, old_x = 1, xx = 0, old_y = 0, yy = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int t = old_r - q * r; old_r = r; r = t;
    t = old_x - q * xx; old_x = xx; xx = t;
    t = old_y - q * yy; old_y = yy; yy = t;
  }
  if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
  x = old_x; y = old_y;
  return old_r;
}

inline Int mod_inv(const Int& a, const Int& m) {
  Int x, y;
  Int g = ext_gcd(mod_reduce(a, m), m, x, y);
  if (g != 1) fail(ErrorKind::Domain, "element not invertible mod m");
  return mod_reduce(x, m);
}

// Deterministic Miller-Rabin; the base set is exact for n < 3.3e24,
// far beyond any prime this library touches.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  unsigned s = 0;
  while (!bit_test(d, 0)) { d >>= 1; ++s; }
  for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    Int x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

inline Int next_prime(Int n) {
  if (n < 2) return 2;
  ++n;
  if (n % 2 == 0 && n > 2) ++n;
  while (!is_prime(n)) n += 2;
  return n;
}

// p-adic valuation with an explicit infinity for 0.
struct Valuation {
  bool infinite = false;
  long long v = 0;

  static Valuation inf() { return {true, 0}; }
  static Valuation of(long long x) { return {false, x}; }

  bool operator==(const Valuation&) const = default;
  bool operator<(const Valuation& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return v < o.v;
  }
  Valuation operator+(const Valuation& o) const {
    if (infinite || o.infinite) return inf();
    return of(v + o.v);
  }
};

inline long long int_valuation(Int n, const Int& p) {
  // caller guarantees n != 0
  long long v = 0;
  while (n % p == 0) { n /= p; ++v; }
  return v;
}

inline Valuation valuation(const Rat& q, const Int& p) {
  if (!is_prime(p)) fail(ErrorKind::Domain, "valuation at a non-prime");
  if (q == 0) return Valuation::inf();
  return Valuation::of(int_valuation(num(q), p) - int_valuation(den(q), p));
}

inline bool p_integral(const Rat& q, const Int& p) {
  return den(q) % p != 0;
}

// CRT for pairwise coprime moduli; returns (residue, product of moduli)
// with 0 <= residue < product.
inline std::pair<Int, Int> crt_combine(
    const std::vector<std::pair<Int, Int>>& congruences) {
  Int r = 0, m = 1;
  for (const auto& [ri, mi] : congruences) {
    Int g = gcd(m, mi);
    if (g != 1) fail(ErrorKind::Domain, "CRT moduli not coprime");
    // solve x = r (mod m), x = ri (mod mi)
    Int t = mod_reduce((ri - r) * mod_inv(m, mi), mi);
    r += m * t;
    m *= mi;
    r = mod_reduce(r, m);
  }
  return {r, m};
}

// Distinct prime factors found by trial division (plus a primality test on
// the cofactor); *complete reports whether the factorization is exhaustive.
// Composite trial divisors never fire once their prime parts are removed.
inline std::vector<Int> trial_division_factors(Int n, const Int& bound,
                                               bool* complete) {
  std::vector<Int> out;
  n = abs(n);
  *complete = true;
  if (n == 0) fail(ErrorKind::Domain, "factoring zero");
  auto strip = [&](const Int& d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  };
  strip(2);
  strip(3);
  for (Int d = 5; d * d <= n && d <= bound; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (n > 1) {
    if (is_prime(n))
      out.push_back(n);
    else
      *complete = false;  // composite cofactor beyond the bound
  }
  return out;
}

// Legendre symbol for odd prime p.
inline int legendre(const Int& a, const Int& p) {
  Int r = mod_pow(mod_reduce(a, p), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

// log of a (possibly huge) positive integer, exact enough for bound ratios.
inline double log_int(const Int& n) {
  if (n <= 0) fail(ErrorKind::Domain, "log of non-positive integer");
  unsigned bits = msb(n);
  if (bits <= 900) return std::log(n.convert_to<double>());
  Int shifted = n >> (bits - 64);
  return std::log(shifted.convert_to<double>()) +
         static_cast<double>(bits - 64) * std::log(2.0);
}

}  // namespace specforge
