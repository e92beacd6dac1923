#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "specforge/numeric.hpp"

namespace specforge {

// Dense univariate polynomial over Q. The variable tag is cosmetic (printing
// only); arithmetic never inspects it.
class Poly {
public:
  Poly() = default;
  explicit Poly(char var) : var_(var) {}
  Poly(std::vector<Rat> coeffs, char var = 'T')
      : c_(std::move(coeffs)), var_(var) {
    trim();
  }

  static Poly zero(char var = 'T') { return Poly(var); }
  static Poly one(char var = 'T') { return constant(1, var); }
  static Poly constant(Rat v, char var = 'T') {
    Poly f(var);
    if (v != 0) f.c_ = {std::move(v)};
    return f;
  }
  static Poly variable(char var = 'T') { return Poly({Rat(0), Rat(1)}, var); }
  // c * X^k
  static Poly monomial(Rat c, int k, char var = 'T') {
    Poly f(var);
    if (c != 0) {
      f.c_.assign(k + 1, Rat(0));
      f.c_[k] = std::move(c);
    }
    return f;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if zero
  char var() const { return var_; }
  void set_var(char v) { var_ = v; }

  const Rat& operator[](int i) const {
    static const Rat kZero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[i];
  }
  const std::vector<Rat>& coeffs() const { return c_; }

  const Rat& lc() const {
    if (is_zero()) fail(ErrorKind::DegenerateInput, "leading coeff of zero");
    return c_.back();
  }
  bool is_monic() const { return !is_zero() && c_.back() == 1; }
  bool is_integral() const {
    for (const auto& x : c_)
      if (den(x) != 1) return false;
    return true;
  }

  Rat eval(const Rat& x) const {
    Rat r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }
  Int eval_int(const Int& x) const {
    Int r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      if (den(*it) != 1)
        fail(ErrorKind::Domain, "integer evaluation of non-integral poly");
      r = r * x + num(*it);
    }
    return r;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r(a.var_ != 0 ? a.var_ : b.var_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a[i] + b[i];
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.var_);
    Poly r(a.var_);
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
  }
  friend Poly operator*(const Poly& a, const Rat& s) {
    Poly r = a;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }
  friend Poly operator*(const Rat& s, const Poly& a) { return a * s; }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Poly derivative() const {
    Poly r(var_);
    if (degree() < 1) return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Rat(Int(i));
    r.trim();
    return r;
  }

  // Euclidean division over Q; divisor must be nonzero.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(ErrorKind::Domain, "division by zero polynomial");
    Poly q(a.var_), r = a;
    int db = b.degree();
    if (r.degree() >= db) q.c_.assign(r.degree() - db + 1, Rat(0));
    while (!r.is_zero() && r.degree() >= db) {
      Rat k = r.lc() / b.lc();
      int shift = r.degree() - db;
      q.c_[shift] = k;
      for (int i = 0; i <= db; ++i) r.c_[shift + i] -= k * b.c_[i];
      r.trim();
    }
    q.trim();
    return {q, r};
  }
  friend Poly operator/(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) fail(ErrorKind::Domain, "inexact polynomial division");
    return q;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / lc());
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const Rat& a = c_[i];
      if (a == 0) continue;
      Rat mag = a < 0 ? Rat(-a) : a;
      if (first) {
        if (a < 0) os << "-";
        first = false;
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      bool unit = (mag == 1);
      if (i == 0 || !unit) os << mag;
      if (i > 0) {
        if (!unit) os << "*";
        os << var_;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rat> c_;
  char var_ = 'T';
};

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

// g(X) = f(c + X), exact.
inline Poly taylor_shift(const Poly& f, const Rat& c) {
  Poly shifted_var({c, Rat(1)}, f.var());
  Poly r = Poly::zero(f.var());
  for (int i = f.degree(); i >= 0; --i) {
    r = r * shifted_var + Poly::constant(f[i], f.var());
  }
  return r;
}

// max |coefficient| of an integer polynomial; 0 for the zero polynomial.
inline Int height(const Poly& f) {
  Int h = 0;
  for (const auto& x : f.coeffs()) {
    if (den(x) != 1) fail(ErrorKind::Domain, "height of non-integral poly");
    Int a = abs(num(x));
    if (a > h) h = a;
  }
  return h;
}

// Minimal polynomial of 1/t given the minimal polynomial of t, with the
// projective conventions 1/inf = 0 and 1/0 = inf. The point at infinity is
// represented by the constant polynomial 1.
inline Poly reciprocal_minpoly(const Poly& m) {
  if (m.is_zero()) fail(ErrorKind::Domain, "reciprocal of zero polynomial");
  if (m.degree() == 0) {
    if (m[0] != 1) fail(ErrorKind::Domain, "constant minimal polynomial must be 1");
    return Poly::variable(m.var());  // 1/inf = 0
  }
  if (!m.is_monic()) fail(ErrorKind::Domain, "minimal polynomial must be monic");
  if (m[0] == 0) {
    if (m.degree() != 1)
      fail(ErrorKind::Domain, "reducible minimal polynomial (divisible by T)");
    return Poly::one(m.var());  // 1/0 = inf
  }
  // Cheap reducibility screen: a rational root makes deg >= 2 inputs invalid.
  if (m.degree() >= 2) {
    // roots of monic m are among q with q = a/b, b | 1 after clearing: scan
    // candidate roots of the integerized polynomial by rational root test.
    Int d = 1;
    for (const auto& x : m.coeffs()) d = lcm(d, den(x));
    // integerize: g(X) = d^deg * m(X/d) has integer coefficients, monic
    std::vector<Rat> g(m.degree() + 1);
    for (int i = 0; i <= m.degree(); ++i)
      g[i] = m[i] * Rat(ipow(d, static_cast<unsigned>(m.degree() - i)));
    Int c0 = abs(num(g[0]));
    for (Int r = 1; r * r <= c0 && r <= 100000; ++r) {
      if (c0 % r != 0) continue;
      for (Int cand : {r, c0 / r}) {
        for (int s : {1, -1}) {
          Rat root = make_rat(s * cand, d);
          if (m.eval(root) == 0)
            fail(ErrorKind::Domain, "reducible minimal polynomial");
        }
      }
    }
  }
  std::vector<Rat> rev(m.coeffs().rbegin(), m.coeffs().rend());
  Poly r(std::move(rev), m.var());
  return r.monic();
}

inline Rat pow_rat(const Rat& b, int e) {
  Rat r(1);
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Resultant over Q by the Euclidean recursion.
inline Rat resultant(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return Rat(0);
  int m = f.degree(), n = g.degree();
  if (m == 0 && n == 0) return Rat(1);
  if (n == 0) return pow_rat(g[0], m);
  if (m == 0) return pow_rat(f[0], n);
  if (m < n) {
    Rat sign = ((m * n) % 2 == 0) ? Rat(1) : Rat(-1);
    return sign * resultant(g, f);
  }
  auto [q, r] = divmod(f, g);
  if (r.is_zero()) return Rat(0);
  Rat sign = ((m * n) % 2 == 0) ? Rat(1) : Rat(-1);
  return sign * pow_rat(g.lc(), m - r.degree()) * resultant(g, r);
}

// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f).
inline Rat discriminant(const Poly& f) {
  int d = f.degree();
  if (d <= 0) fail(ErrorKind::Domain, "discriminant needs degree >= 1");
  if (d == 1) return Rat(1);
  Rat res = resultant(f, f.derivative());
  Rat sign = ((d * (d - 1) / 2) % 2 == 0) ? Rat(1) : Rat(-1);
  return sign * res / f.lc();
}

inline Poly squarefree_part(const Poly& f) {
  if (f.degree() <= 0) return f;
  Poly g = poly_gcd(f, f.derivative());
  return (f / g).monic();
}

// Lagrange interpolation through (x_i, y_i), distinct x_i.
inline Poly interpolate(const std::vector<std::pair<Rat, Rat>>& points,
                        char var = 'T') {
  Poly acc = Poly::zero(var);
  for (size_t i = 0; i < points.size(); ++i) {
    Poly basis = Poly::one(var);
    Rat denom(1);
    for (size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      basis = basis * Poly({-points[j].first, Rat(1)}, var);
      denom *= points[i].first - points[j].first;
    }
    acc = acc + basis * (points[i].second / denom);
  }
  return acc;
}

}  // namespace specforge
