#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "specforge/poly.hpp"

namespace specforge {

// P(T,Y) with integer coefficients, finitely supported on (deg_T, deg_Y).
class BiPoly {
public:
  using Key = std::pair<int, int>;  // (deg_T, deg_Y)

  BiPoly() = default;

  static BiPoly zero() { return {}; }

  void add_term(int dt, int dy, Int c) {
    if (c == 0) return;
    auto [it, inserted] = c_.emplace(Key{dt, dy}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) c_.erase(it);
    }
  }

  bool is_zero() const { return c_.empty(); }
  const std::map<Key, Int>& terms() const { return c_; }

  int degree_y() const {
    int d = -1;
    for (const auto& [k, v] : c_) d = std::max(d, k.second);
    return d;
  }
  int degree_t() const {
    int d = -1;
    for (const auto& [k, v] : c_) d = std::max(d, k.first);
    return d;
  }

  Int coeff(int dt, int dy) const {
    auto it = c_.find(Key{dt, dy});
    return it == c_.end() ? Int(0) : it->second;
  }

  // Coefficient of Y^j, as a polynomial in T.
  Poly coeff_of_y(int j) const {
    std::vector<Rat> cs;
    for (const auto& [k, v] : c_) {
      if (k.second != j) continue;
      if (static_cast<int>(cs.size()) <= k.first) cs.resize(k.first + 1, Rat(0));
      cs[k.first] = Rat(v);
    }
    return Poly(std::move(cs), 'T');
  }

  bool monic_in_y() const {
    int n = degree_y();
    if (n < 0) return false;
    Poly top = coeff_of_y(n);
    return top.degree() == 0 && top[0] == 1;
  }

  // P(t, Y) as a univariate polynomial in Y.
  Poly eval_t(const Rat& t) const {
    int n = degree_y();
    std::vector<Rat> cs(n + 1, Rat(0));
    for (const auto& [k, v] : c_) cs[k.second] += Rat(v) * pow_rat(t, k.first);
    return Poly(std::move(cs), 'Y');
  }

  BiPoly derivative_y() const {
    BiPoly r;
    for (const auto& [k, v] : c_)
      if (k.second >= 1) r.add_term(k.first, k.second - 1, v * k.second);
    return r;
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (const auto& [k, v] : b.c_) r.add_term(k.first, k.second, v);
    return r;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ka, va] : a.c_)
      for (const auto& [kb, vb] : b.c_)
        r.add_term(ka.first + kb.first, ka.second + kb.second, va * vb);
    return r;
  }
  bool operator==(const BiPoly& o) const { return c_ == o.c_; }

  // Canonical textual form, re-parseable by parse_poly.
  std::string str() const {
    if (c_.empty()) return "0";
    // sort by Y-degree desc, then T-degree desc
    std::vector<std::pair<Key, Int>> terms(c_.begin(), c_.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
      if (a.first.second != b.first.second) return a.first.second > b.first.second;
      return a.first.first > b.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : terms) {
      Int mag = abs(v);
      if (first) {
        if (v < 0) os << "-";
        first = false;
      } else {
        os << (v < 0 ? " - " : " + ");
      }
      bool unit = (mag == 1) && (k.first > 0 || k.second > 0);
      if (!unit) os << mag;
      bool need_star = !unit;
      auto emit = [&](char var, int d) {
        if (d == 0) return;
        if (need_star) os << "*";
        os << var;
        if (d > 1) os << "^" << d;
        need_star = true;
      };
      emit('T', k.first);
      emit('Y', k.second);
    }
    return os.str();
  }

private:
  std::map<Key, Int> c_;
};

// Discriminant of P with respect to Y, as an integer polynomial in T.
// Computed by specialization + interpolation; valid since P is monic in Y.
inline Poly disc_y(const BiPoly& P) {
  int n = P.degree_y();
  if (n < 1) fail(ErrorKind::Domain, "disc_y needs positive Y-degree");
  if (!P.monic_in_y()) fail(ErrorKind::Domain, "disc_y needs P monic in Y");
  if (n == 1) return Poly::one('T');
  int bound = P.degree_t() * (2 * n - 1) + 1;
  std::vector<std::pair<Rat, Rat>> pts;
  pts.reserve(bound);
  Int t = 0;
  while (static_cast<int>(pts.size()) < bound) {
    Rat tv(t);
    pts.emplace_back(tv, discriminant(P.eval_t(tv)));
    t = t > 0 ? -t : -t + 1;  // 0, 1, -1, 2, -2, ...
  }
  Poly d = interpolate(pts, 'T');
  for (const auto& c : d.coeffs())
    if (den(c) != 1) fail(ErrorKind::Domain, "disc_y: non-integral result");
  return d;
}

// Rewrite P(1/S, Y) in the coordinates W = S^w * Y with the least w >= 1
// making the result a polynomial Q(S, W), monic in W. Q describes the cover
// near T = infinity (S = 0); it also scales integer specializations:
// Q(p, W) = p^{n*w} * P(1/p, W / p^w).
struct InfinityModel {
  BiPoly Q;
  int w = 1;
};

inline InfinityModel infinity_model(const BiPoly& P) {
  int n = P.degree_y();
  if (!P.monic_in_y()) fail(ErrorKind::Domain, "infinity model needs monic P");
  int w = 1;
  for (int j = 0; j < n; ++j) {
    int dt = P.coeff_of_y(j).degree();
    if (dt <= 0) continue;
    w = std::max(w, (dt + (n - j) - 1) / (n - j));  // ceil(dt / (n - j))
  }
  BiPoly Q;
  for (const auto& [k, v] : P.terms()) {
    int dt = k.first, dy = k.second;
    // T^dt Y^dy -> S^(w*(n-dy) - dt) W^dy
    Q.add_term(w * (n - dy) - dt, dy, v);
  }
  return {Q, w};
}

}  // namespace specforge
