#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "specforge/poly.hpp"

namespace specforge {

// Seed for the randomized equal-degree splitting; part of the call context so
// replays are bit-identical. The CLI wires SPECFORGE_SEED through here.
struct FactorContext {
  std::uint64_t seed = 0;
};

namespace modp {

// Polynomials over F_p as coefficient vectors with entries in [0, p).
using MP = std::vector<Int>;

inline void trim(MP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int deg(const MP& f) { return static_cast<int>(f.size()) - 1; }
inline bool is_one(const MP& f) { return f.size() == 1 && f[0] == 1; }

inline MP from_poly(const Poly& f, const Int& p) {
  MP r(f.degree() + 1);
  for (int i = 0; i <= f.degree(); ++i) {
    const Rat& c = f[i];
    if (den(c) % p == 0)
      fail(ErrorKind::Domain, "coefficient not p-integral");
    r[i] = mod_reduce(num(c) % p * mod_inv(den(c) % p, p), p);
  }
  trim(r);
  return r;
}

// Balanced lift back to an integer polynomial; representatives in (-p/2, p/2].
inline Poly to_poly(const MP& f, const Int& p, char var = 'Y') {
  std::vector<Rat> c(f.size());
  for (size_t i = 0; i < f.size(); ++i) c[i] = Rat(balanced_mod(f[i], p));
  return Poly(std::move(c), var);
}

inline MP add(const MP& a, const MP& b, const Int& p) {
  MP r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < r.size(); ++i) {
    Int v = (i < a.size() ? a[i] : Int(0)) + (i < b.size() ? b[i] : Int(0));
    r[i] = mod_reduce(v, p);
  }
  trim(r);
  return r;
}
inline MP sub(const MP& a, const MP& b, const Int& p) {
  MP r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < r.size(); ++i) {
    Int v = (i < a.size() ? a[i] : Int(0)) - (i < b.size() ? b[i] : Int(0));
    r[i] = mod_reduce(v, p);
  }
  trim(r);
  return r;
}
inline MP mul(const MP& a, const MP& b, const Int& p) {
  if (a.empty() || b.empty()) return {};
  MP r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}
inline MP scale(const MP& a, const Int& s, const Int& p) {
  MP r = a;
  for (auto& x : r) x = mod_reduce(x * s, p);
  trim(r);
  return r;
}
inline MP monic(const MP& a, const Int& p) {
  if (a.empty()) return a;
  return scale(a, mod_inv(a.back(), p), p);
}

inline std::pair<MP, MP> divmod(const MP& a, const MP& b, const Int& p) {
  if (b.empty()) fail(ErrorKind::Domain, "mod-p division by zero");
  MP r = a, q;
  Int inv_lb = mod_inv(b.back(), p);
  int db = deg(b);
  if (deg(r) >= db) q.assign(deg(r) - db + 1, Int(0));
  while (deg(r) >= db) {
    Int k = mod_reduce(r.back() * inv_lb, p);
    int shift = deg(r) - db;
    q[shift] = k;
    for (int i = 0; i <= db; ++i)
      r[shift + i] = mod_reduce(r[shift + i] - k * b[i], p);
    trim(r);
  }
  trim(q);
  return {q, r};
}
inline MP mod(const MP& a, const MP& b, const Int& p) {
  return divmod(a, b, p).second;
}
inline MP gcd(MP a, MP b, const Int& p) {
  while (!b.empty()) {
    MP r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}
inline MP derivative(const MP& f, const Int& p) {
  MP r;
  if (deg(f) < 1) return r;
  r.resize(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = mod_reduce(f[i] * Int(i), p);
  trim(r);
  return r;
}
inline MP powmod(MP base, Int e, const MP& f, const Int& p) {
  MP r{Int(1)};
  base = mod(base, f, p);
  while (e > 0) {
    if (bit_test(e, 0)) r = mod(mul(r, base, p), f, p);
    base = mod(mul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

// a^(1/p) in F_p[Y]: valid when a only has exponents divisible by p.
inline MP pth_root(const MP& a, const Int& p) {
  MP r;
  long long pl = p.convert_to<long long>();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (i % pl != 0) fail(ErrorKind::Domain, "not a p-th power");
    size_t j = i / pl;
    if (r.size() <= j) r.resize(j + 1, Int(0));
    r[j] = a[i];  // Frobenius is the identity on F_p
  }
  trim(r);
  return r;
}

// Squarefree decomposition of a monic f: pairs (g_i, m_i), g_i squarefree.
inline std::vector<std::pair<MP, int>> squarefree_decomposition(const MP& f,
                                                                const Int& p) {
  std::vector<std::pair<MP, int>> out;
  MP fp = derivative(f, p);
  if (fp.empty()) {
    for (auto& [g, m] : squarefree_decomposition(pth_root(f, p), p))
      out.emplace_back(g, m * p.convert_to<int>());
    return out;
  }
  MP c = gcd(f, fp, p);
  MP w = divmod(f, c, p).first;
  int i = 1;
  while (!is_one(w)) {
    MP y = gcd(w, c, p);
    MP z = divmod(w, y, p).first;
    if (deg(z) > 0) out.emplace_back(monic(z, p), i);
    w = std::move(y);
    c = divmod(c, w, p).first;
    ++i;
  }
  if (!is_one(c)) {
    for (auto& [g, m] : squarefree_decomposition(pth_root(c, p), p))
      out.emplace_back(g, m * p.convert_to<int>());
  }
  return out;
}

// Distinct-degree factorization of squarefree monic f:
// pairs (product-of-irreducibles-of-degree-d, d).
inline std::vector<std::pair<MP, int>> distinct_degree(MP f, const Int& p) {
  std::vector<std::pair<MP, int>> out;
  MP x{Int(0), Int(1)};
  MP h = x;
  int d = 0;
  while (deg(f) >= 1) {
    ++d;
    if (2 * d > deg(f)) {
      out.emplace_back(f, deg(f));
      break;
    }
    h = powmod(h, p, f, p);  // h = Y^(p^d) mod f
    MP g = gcd(sub(h, x, p), f, p);
    if (deg(g) > 0) {
      out.emplace_back(g, d);
      f = divmod(f, g, p).first;
      h = mod(h, f, p);
    }
  }
  return out;
}

// Next monic polynomial of fixed degree d in the canonical enumeration
// (coefficients as base-p digits, constant term fastest).
inline bool next_candidate(MP& c, const Int& p, int d) {
  for (int i = 0; i < d; ++i) {
    c[i] += 1;
    if (c[i] < p) return true;
    c[i] = 0;
  }
  return false;
}

// Split a product of k >= 2 irreducibles, all of degree d.
inline void equal_degree_split(const MP& f, int d, const Int& p,
                               std::mt19937_64& rng, std::vector<MP>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  // Deterministic path for small fields: enumerate monic candidates.
  Int space = ipow(p, static_cast<unsigned>(d));
  if (space <= 200000) {
    MP rem = f;
    MP cand(d + 1, Int(0));
    cand[d] = 1;
    while (deg(rem) > d) {
      if (mod(rem, cand, p).empty())
        rem = divmod(rem, cand, p).first, out.push_back(cand);
      else if (!next_candidate(cand, p, d))
        fail(ErrorKind::Domain, "enumeration exhausted");  // unreachable
    }
    out.push_back(rem);
    return;
  }
  // Cantor-Zassenhaus.
  std::uniform_int_distribution<std::uint64_t> dist;
  auto random_poly = [&](int degree) {
    MP a(degree + 1);
    for (auto& c : a) c = Int(dist(rng)) % p;
    trim(a);
    return a;
  };
  while (true) {
    MP a = random_poly(deg(f) - 1);
    if (deg(a) < 1) continue;
    MP b;
    if (p == 2) {
      b = a;
      MP t = a;
      for (int i = 1; i < d; ++i) {
        t = powmod(t, 2, f, p);
        b = add(b, t, p);
      }
    } else {
      Int e = (ipow(p, static_cast<unsigned>(d)) - 1) / 2;
      b = sub(powmod(a, e, f, p), MP{Int(1)}, p);
    }
    MP g = gcd(b, f, p);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      equal_degree_split(g, d, p, rng, out);
      equal_degree_split(divmod(f, g, p).first, d, p, rng, out);
      return;
    }
  }
}

}  // namespace modp

struct ModFactor {
  Poly factor;  // monic, balanced integer coefficients
  int multiplicity = 1;
};

// Canonical order: by degree, then coefficient tuples (constant term first,
// balanced representatives) ascending.
inline bool canonical_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

inline std::vector<ModFactor> factor_mod_p(const Poly& f, const Int& p,
                                           const FactorContext& ctx = {}) {
  if (!is_prime(p)) fail(ErrorKind::Domain, "factor_mod_p at a non-prime");
  modp::MP fm = modp::from_poly(f, p);
  if (fm.empty()) fail(ErrorKind::DegenerateInput, "polynomial vanishes mod p");
  if (modp::deg(fm) == 0) return {};
  fm = modp::monic(fm, p);
  std::mt19937_64 rng(ctx.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<ModFactor> out;
  for (auto& [sq, mult] : modp::squarefree_decomposition(fm, p)) {
    for (auto& [prod, d] : modp::distinct_degree(sq, p)) {
      std::vector<modp::MP> irr;
      modp::equal_degree_split(prod, d, p, rng, irr);
      for (auto& g : irr) out.push_back({modp::to_poly(g, p), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const ModFactor& a, const ModFactor& b) {
    return canonical_less(a.factor, b.factor);
  });
  return out;
}

// Factor degrees (with multiplicity) of f mod p.
inline std::vector<int> factor_degrees_mod_p(const Poly& f, const Int& p,
                                             const FactorContext& ctx = {}) {
  std::vector<int> ds;
  for (const auto& mf : factor_mod_p(f, p, ctx))
    for (int i = 0; i < mf.multiplicity; ++i) ds.push_back(mf.factor.degree());
  std::sort(ds.rbegin(), ds.rend());
  return ds;
}

namespace detail {

// One linear Hensel step: given f = g*h (mod q) with g, h monic and coprime
// mod p, produce the unique lift modulo q*p. All polys have integer coeffs.
inline void hensel_step(const Poly& f, Poly& g, Poly& h, const Int& p,
                        const Int& q, const modp::MP& t) {
  // e = (f - g*h) / q  (exact over Z)
  Poly diff = f - g * h;
  std::vector<Rat> ec(diff.degree() + 1);
  for (int i = 0; i <= diff.degree(); ++i) ec[i] = Rat(num(diff[i]) / q);
  Poly e(std::move(ec), f.var());
  modp::MP em = modp::from_poly(e, p);
  modp::MP gm = modp::from_poly(g, p);
  modp::MP hm = modp::from_poly(h, p);
  // e = u*h + v*g (mod p), deg u < deg g, deg v < deg h
  modp::MP u = modp::mod(modp::mul(t, em, p), gm, p);
  modp::MP rest = modp::sub(em, modp::mul(u, hm, p), p);
  modp::MP v = modp::divmod(rest, gm, p).first;
  g = g + modp::to_poly(u, p, f.var()) * Rat(q);
  h = h + modp::to_poly(v, p, f.var()) * Rat(q);
}

inline void balance_mod(Poly& f, const Int& m) {
  std::vector<Rat> c(f.degree() + 1);
  for (int i = 0; i <= f.degree(); ++i) c[i] = Rat(balanced_mod(num(f[i]), m));
  f = Poly(std::move(c), f.var());
}

}  // namespace detail

// Lift f = g*h (mod p) to f = G*H (mod p^k); G = g, H = h (mod p).
// Inputs monic with integer coefficients; output balanced mod p^k.
inline std::pair<Poly, Poly> hensel_lift(const Poly& f, const Int& p,
                                         const Poly& g, const Poly& h, int k) {
  if (!is_prime(p)) fail(ErrorKind::Domain, "hensel_lift at a non-prime");
  if (!f.is_integral() || !g.is_integral() || !h.is_integral())
    fail(ErrorKind::Domain, "hensel_lift needs integer coefficients");
  if (!f.is_monic() || !g.is_monic() || !h.is_monic())
    fail(ErrorKind::Domain, "hensel_lift needs monic polynomials");
  if (k < 1) fail(ErrorKind::Domain, "precision must be >= 1");
  modp::MP gm = modp::from_poly(g, p), hm = modp::from_poly(h, p);
  modp::MP fm = modp::from_poly(f, p);
  if (!modp::sub(fm, modp::mul(gm, hm, p), p).empty())
    fail(ErrorKind::Lift, "pair does not factor f mod p");
  if (modp::deg(modp::gcd(gm, hm, p)) != 0)
    fail(ErrorKind::Lift, "factors not coprime mod p");
  Int pk = ipow(p, static_cast<unsigned>(k));
  if (h.degree() == 0) {
    Poly G = f;
    detail::balance_mod(G, pk);
    return {G, Poly::one(f.var())};
  }
  if (g.degree() == 0) {
    Poly H = f;
    detail::balance_mod(H, pk);
    return {Poly::one(f.var()), H};
  }
  // Bezout data mod p: s*g + t*h = 1; the steps only consume t.
  modp::MP t;
  {
    // extended Euclid in F_p[Y]
    modp::MP r0 = gm, r1 = hm;
    modp::MP t0, t1{Int(1)};
    while (!r1.empty()) {
      auto [qq, rr] = modp::divmod(r0, r1, p);
      modp::MP nt = modp::sub(t0, modp::mul(qq, t1, p), p);
      r0 = std::move(r1); r1 = std::move(rr);
      t0 = std::move(t1); t1 = std::move(nt);
    }
    t = modp::scale(t0, mod_inv(r0[0], p), p);
  }
  Poly G = g, H = h;
  detail::balance_mod(G, p);
  detail::balance_mod(H, p);
  Int q = p;
  while (q < pk) {
    detail::hensel_step(f, G, H, p, q, t);
    q *= p;
    // Keep representatives small as we climb.
    detail::balance_mod(G, q);
    detail::balance_mod(H, q);
  }
  detail::balance_mod(G, pk);
  detail::balance_mod(H, pk);
  return {G, H};
}

// Lift a full pairwise-coprime monic factorization of f mod p to mod p^k.
inline std::vector<Poly> hensel_lift_multi(const Poly& f, const Int& p,
                                           const std::vector<Poly>& parts,
                                           int k) {
  if (parts.size() <= 1) {
    Poly F = f;
    detail::balance_mod(F, ipow(p, static_cast<unsigned>(k)));
    return {F};
  }
  Poly rest = Poly::one(f.var());
  for (size_t i = 1; i < parts.size(); ++i) {
    rest = rest * parts[i];
    detail::balance_mod(rest, p);
  }
  auto [G, R] = hensel_lift(f, p, parts[0], rest, k);
  std::vector<Poly> tail(parts.begin() + 1, parts.end());
  std::vector<Poly> lifted = hensel_lift_multi(R, p, tail, k);
  lifted.insert(lifted.begin(), G);
  return lifted;
}

// Monic irreducible factors over Q of a monic integer polynomial, repeated
// per multiplicity, canonically ordered; Zassenhaus with subset
// recombination (no lattice reduction: degrees here stay tiny).
inline std::vector<Poly> factor_over_z(const Poly& f,
                                       const FactorContext& ctx = {}) {
  if (!f.is_integral() || !f.is_monic())
    fail(ErrorKind::Domain, "factor_over_z needs a monic integer polynomial");
  if (f.degree() == 0) return {};
  std::vector<Poly> result;
  Poly fsq = squarefree_part(f);
  std::vector<Poly> irreducibles;
  if (fsq.degree() == 1) {
    irreducibles.push_back(fsq);
  } else {
    // Reduction prime with good (squarefree) reduction.
    Rat dsc = discriminant(fsq);
    Int p = 3;
    while (valuation(dsc, p).v != 0 || valuation(dsc, p).infinite) p = next_prime(p);
    std::vector<Poly> modular;
    for (const auto& mf : factor_mod_p(fsq, p, ctx)) modular.push_back(mf.factor);
    if (modular.size() == 1) {
      irreducibles.push_back(fsq);
    } else {
      // Mignotte-style bound on factor coefficients.
      Int B = height(fsq) + 1;
      B = B * ipow(Int(2), static_cast<unsigned>(fsq.degree() + 1));
      Int target = 2 * B + 1;
      int k = 1;
      Int pk = p;
      while (pk < target) { pk *= p; ++k; }
      if (modular.size() > 62)
        fail(ErrorKind::Domain, "too many modular factors for subset recombination");
      std::vector<Poly> lifted = hensel_lift_multi(fsq, p, modular, k);
      Int modulus = ipow(p, static_cast<unsigned>(k));
      std::vector<int> alive(lifted.size());
      for (size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<int>(i);
      Poly remaining = fsq;
      bool progress = true;
      while (progress && !alive.empty()) {
        progress = false;
        size_t m = alive.size();
        for (size_t card = 1; card <= m / 2 && !progress; ++card) {
          for (std::uint64_t mask = 1; mask < (1ULL << m) && !progress; ++mask) {
            if (static_cast<size_t>(std::popcount(mask)) != card) continue;
            Poly cand = Poly::one(f.var());
            for (size_t i = 0; i < m; ++i)
              if (mask & (1ULL << i)) {
                cand = cand * lifted[alive[i]];
                detail::balance_mod(cand, modulus);
              }
            auto [q, r] = divmod(remaining, cand);
            if (!r.is_zero()) continue;
            irreducibles.push_back(cand);
            remaining = q;
            std::vector<int> next_alive;
            for (size_t i = 0; i < m; ++i)
              if (!(mask & (1ULL << i))) next_alive.push_back(alive[i]);
            alive = std::move(next_alive);
            progress = true;
          }
        }
      }
      if (remaining.degree() >= 1) irreducibles.push_back(remaining);
    }
  }
  // Multiplicities against the original.
  Poly rest = f;
  for (const auto& q : irreducibles) {
    while (true) {
      auto [quot, rem] = divmod(rest, q);
      if (!rem.is_zero()) break;
      result.push_back(q);
      rest = quot;
    }
  }
  if (rest.degree() != 0)
    fail(ErrorKind::Domain, "internal: factorization incomplete");
  std::sort(result.begin(), result.end(), canonical_less);
  return result;
}

// Monic irreducible factors over Q of a monic rational polynomial.
inline std::vector<Poly> factor_over_q(const Poly& f,
                                       const FactorContext& ctx = {}) {
  if (!f.is_monic()) fail(ErrorKind::Domain, "factor_over_q needs monic input");
  Int c = 1;
  for (const auto& x : f.coeffs()) c = lcm(c, den(x));
  if (c == 1) return factor_over_z(f, ctx);
  // g(Z) = c^d f(Z/c) is integer monic
  int d = f.degree();
  std::vector<Rat> gc(d + 1);
  for (int i = 0; i <= d; ++i)
    gc[i] = f[i] * Rat(ipow(c, static_cast<unsigned>(d - i)));
  Poly g(std::move(gc), f.var());
  std::vector<Poly> out;
  for (const auto& q : factor_over_z(g, ctx)) {
    int dq = q.degree();
    std::vector<Rat> qc(dq + 1);
    for (int i = 0; i <= dq; ++i)
      qc[i] = q[i] * make_rat(1, ipow(c, static_cast<unsigned>(dq - i)));
    out.emplace_back(std::move(qc), f.var());
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

inline bool is_irreducible_over_q(const Poly& f, const FactorContext& ctx = {}) {
  if (f.degree() <= 0) return false;
  if (f.degree() == 1) return true;
  return factor_over_q(f.monic(), ctx).size() == 1;
}

}  // namespace specforge
