#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "specforge/cycle.hpp"
#include "specforge/factor.hpp"
#include "specforge/poly.hpp"

namespace specforge {

// Lower convex hull of (x, v) points, x strictly increasing.
struct HullSegment {
  int x0;
  long long v0;
  int x1;
  long long v1;
  Rat slope() const { return make_rat(Int(v1 - v0), Int(x1 - x0)); }
  int length() const { return x1 - x0; }
};

inline std::vector<HullSegment> lower_hull(
    const std::vector<std::pair<int, long long>>& pts) {
  std::vector<std::pair<int, long long>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // keep b only if it lies strictly below segment a-pt
      long long lhs = (b.second - a.second) * (pt.first - a.first);
      long long rhs = (pt.second - a.second) * (b.first - a.first);
      if (lhs < rhs) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  std::vector<HullSegment> segs;
  for (size_t i = 0; i + 1 < hull.size(); ++i)
    segs.push_back({hull[i].first, hull[i].second, hull[i + 1].first,
                    hull[i + 1].second});
  return segs;
}

struct NewtonSegment {
  Rat slope;
  int length;
  bool operator==(const NewtonSegment&) const = default;
};

// Segments with strictly increasing slopes; lengths sum to
// deg f minus the order of vanishing at 0.
struct NewtonPolygon {
  std::vector<NewtonSegment> segments;
  bool operator==(const NewtonPolygon&) const = default;
};

inline NewtonPolygon newton_polygon(const Poly& f, const Int& p) {
  if (f.is_zero()) fail(ErrorKind::DegenerateInput, "newton_polygon of zero");
  if (!f.is_integral())
    fail(ErrorKind::Domain, "newton_polygon needs integer coefficients");
  if (!is_prime(p)) fail(ErrorKind::Domain, "newton_polygon at a non-prime");
  int start = 0;
  while (f[start] == 0) ++start;
  std::vector<std::pair<int, long long>> pts;
  for (int i = start; i <= f.degree(); ++i) {
    if (f[i] == 0) continue;
    pts.emplace_back(i - start, int_valuation(num(f[i]), p));
  }
  NewtonPolygon np;
  for (const auto& s : lower_hull(pts)) np.segments.push_back({s.slope(), s.length()});
  return np;
}

// Splitting data of a monic integer polynomial over Q_p in the tame,
// Ore-regular case: the multiset of (ramification index, residue degree).
struct SplittingType {
  std::vector<std::pair<int, int>> pairs;  // (e, f), sorted

  void add(int e, int f) { pairs.emplace_back(e, f); }
  void canonicalize() { std::sort(pairs.begin(), pairs.end()); }
  int total() const {
    int s = 0;
    for (auto& [e, f] : pairs) s += e * f;
    return s;
  }
  // e repeated f times, over all pairs
  CycleType expand() const {
    std::vector<int> parts;
    for (auto& [e, f] : pairs)
      for (int i = 0; i < f; ++i) parts.push_back(e);
    return CycleType(parts);
  }
  std::vector<int> ramification_set() const {
    std::vector<int> es;
    for (auto& [e, f] : pairs) es.push_back(e);
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    return es;
  }
  bool unramified() const {
    for (auto& [e, f] : pairs)
      if (e != 1) return false;
    return true;
  }
  bool operator==(const SplittingType&) const = default;
  std::string str() const {
    std::string s = "{";
    for (size_t i = 0; i < pairs.size(); ++i) {
      if (i) s += ", ";
      s += "(" + std::to_string(pairs[i].first) + "," +
           std::to_string(pairs[i].second) + ")";
    }
    return s + "}";
  }
};

namespace detail {

// Residual polynomial of a negative-slope segment of the shifted polynomial
// G, with slope -h/e in lowest terms. Coefficients land in F_p.
inline modp::MP residual_mod_p(const Poly& G, const HullSegment& seg,
                               const Int& p, long long h, int e) {
  int len = seg.length() / e;
  modp::MP R(len + 1, Int(0));
  for (int j = 0; j <= len; ++j) {
    const Rat& c = G[seg.x0 + j * e];
    if (c == 0) continue;
    long long want = seg.v0 - j * h;  // hull line value at this x
    Int val = num(c);
    long long v = int_valuation(val, p);
    if (v < want) fail(ErrorKind::Domain, "internal: point below hull");
    if (v > want) continue;  // strictly above the segment
    R[j] = mod_reduce(val / ipow(p, static_cast<unsigned>(want)), p);
  }
  modp::trim(R);
  return R;
}

}  // namespace detail

inline SplittingType local_splitting(const Poly& f, const Int& p,
                                     const FactorContext& ctx = {}) {
  if (!is_prime(p) || p == 2)
    fail(ErrorKind::Domain, "local_splitting needs an odd prime");
  if (!f.is_integral() || !f.is_monic())
    fail(ErrorKind::Domain, "local_splitting needs a monic integer polynomial");
  if (f.degree() < 1 || discriminant(f) == 0)
    fail(ErrorKind::DegenerateInput, "local_splitting needs a separable polynomial");

  SplittingType st;
  for (const auto& mf : factor_mod_p(f, p, ctx)) {
    if (mf.multiplicity == 1) {
      st.add(1, mf.factor.degree());
      continue;
    }
    if (mf.factor.degree() > 1)
      fail(ErrorKind::IrregularCase,
           "repeated non-linear factor mod p; would need Montes machinery");
    // Repeated root r mod p: shift there and read the negative slopes.
    Int r = mod_reduce(-num(mf.factor[0]), p);
    Poly G = taylor_shift(f, Rat(r));
    if (G[0] == 0) {
      // r itself is a root of f over Z; squarefree-ness caps this at one.
      st.add(1, 1);
      std::vector<Rat> shifted(G.coeffs().begin() + 1, G.coeffs().end());
      G = Poly(std::move(shifted), f.var());
    }
    std::vector<std::pair<int, long long>> pts;
    for (int i = 0; i <= G.degree(); ++i) {
      if (G[i] == 0) continue;
      pts.emplace_back(i, int_valuation(num(G[i]), p));
    }
    for (const auto& seg : lower_hull(pts)) {
      if (seg.v1 >= seg.v0) continue;  // only the part carrying roots near r
      long long rise = seg.v0 - seg.v1;
      long long g = std::gcd<long long>(rise, seg.length());
      long long h = rise / g;
      int e = seg.length() / static_cast<int>(g);
      if (Int(e) % p == 0)
        fail(ErrorKind::WildCase, "p divides a ramification index");
      modp::MP R = detail::residual_mod_p(G, seg, p, h, e);
      if (modp::deg(modp::gcd(R, modp::derivative(R, p), p)) != 0)
        fail(ErrorKind::IrregularCase, "inseparable residual polynomial");
      for (const auto& rf : factor_mod_p(modp::to_poly(R, p, 'x'), p, ctx))
        st.add(e, rf.factor.degree());
    }
  }
  st.canonicalize();
  if (st.total() != f.degree())
    fail(ErrorKind::Domain, "internal: splitting does not cover the degree");
  return st;
}

// Cycle type of Frobenius at an unramified prime: the factor degrees mod p.
inline CycleType frobenius_cycle_type(const Poly& f, const Int& p,
                                      const FactorContext& ctx = {}) {
  if (!is_prime(p)) fail(ErrorKind::Domain, "frobenius at a non-prime");
  if (!f.is_integral() || !f.is_monic())
    fail(ErrorKind::Domain, "frobenius_cycle_type needs a monic integer polynomial");
  Rat d = discriminant(f);
  if (d == 0) fail(ErrorKind::DegenerateInput, "inseparable polynomial");
  if (valuation(d, p).v != 0)
    fail(ErrorKind::RamifiedPrime, "p divides disc; use local_splitting");
  return CycleType(factor_degrees_mod_p(f, p, ctx));
}

// Tame conductor-discriminant self-check:
// v_p(disc f) >= sum (e-1)*f, with even difference.
inline bool tame_disc_check(const Poly& f, const Int& p, const SplittingType& s) {
  Rat d = discriminant(f);
  if (d == 0) return false;
  long long v = valuation(d, p).v;
  long long expected = 0;
  for (auto& [e, fr] : s.pairs) expected += static_cast<long long>(e - 1) * fr;
  return v >= expected && (v - expected) % 2 == 0;
}

}  // namespace specforge
