#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "specforge/bipoly.hpp"
#include "specforge/cycle.hpp"
#include "specforge/padic.hpp"

namespace specforge {

// Presentation of a finite extension E/Q(T) by a defining polynomial,
// together with the declared group-theoretic facts the algorithms consume:
// the geometric Galois group enters only through its order, and the Galois
// closure is required (declared) to be Q-regular.
struct Extension {
  BiPoly P;
  int n = 0;
  Int geometric_group_order;
  bool closure_regular = true;
};

inline Int factorial(int n) {
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Validates the presentation and certifies irreducibility of P over Q(T)
// by exhibiting an irreducible specialization (monic specializations of a
// product factor accordingly, so one irreducible fiber suffices).
inline Extension make_extension(const BiPoly& P,
                                std::optional<Int> group_order = {},
                                bool closure_regular = true,
                                const FactorContext& ctx = {}) {
  Extension ext;
  ext.P = P;
  ext.n = P.degree_y();
  if (ext.n < 2) fail(ErrorKind::Domain, "degree in Y must be >= 2");
  if (!P.monic_in_y()) fail(ErrorKind::Domain, "P must be monic in Y");
  Poly d = disc_y(P);
  if (d.is_zero())
    fail(ErrorKind::DegenerateInput, "disc_y(P) vanishes identically");
  ext.geometric_group_order = group_order ? *group_order : factorial(ext.n);
  if (ext.geometric_group_order < 1)
    fail(ErrorKind::Domain, "group order must be positive");
  ext.closure_regular = closure_regular;
  if (!closure_regular)
    fail(ErrorKind::Domain,
         "only Q-regular Galois closures are supported (set closure_regular)");
  bool certified = false;
  Int t = 0;
  for (int tries = 0; tries < 41 && !certified; ++tries) {
    if (d.eval(Rat(t)) != 0) {
      Poly fiber = P.eval_t(Rat(t));
      if (factor_over_z(fiber, ctx).size() == 1) certified = true;
    }
    t = t > 0 ? -t : -t + 1;
  }
  if (!certified)
    fail(ErrorKind::Domain,
         "could not certify irreducibility of P over Q(T) from fibers");
  return ext;
}

enum class Provenance { Declared, ExactNewton, SampledPrimes };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Declared: return "declared";
    case Provenance::ExactNewton: return "exact-newton";
    case Provenance::SampledPrimes: return "sampled-primes";
  }
  return "?";
}

struct BranchPoint {
  bool at_infinity = false;
  Poly minpoly;  // monic over Q; the constant 1 for the point at infinity
  CycleType inertia;
  Provenance provenance = Provenance::ExactNewton;
  std::vector<Int> sample_primes;

  Poly reciprocal() const { return reciprocal_minpoly(minpoly); }
  int point_degree() const {
    return at_infinity ? 1 : minpoly.degree();
  }
};

enum class BadReason {
  DividesGroupOrder,
  BranchPointsMeet,
  FailsToUnitize,
  VerticalSurrogate,
  RamifiesInBranchField,
};

inline const char* bad_reason_name(BadReason r) {
  switch (r) {
    case BadReason::DividesGroupOrder: return "divides-group-order";
    case BadReason::BranchPointsMeet: return "branch-points-meet";
    case BadReason::FailsToUnitize: return "fails-to-unitize";
    case BadReason::VerticalSurrogate: return "vertical-surrogate";
    case BadReason::RamifiesInBranchField: return "ramifies-in-branch-field";
  }
  return "?";
}

struct PrimeClassification {
  Int p;
  std::vector<BadReason> reasons;
  bool good() const { return reasons.empty(); }
};

// Fully analyzed cover data; immutable after analyze_cover.
struct Cover {
  Extension ext;
  Poly disc;         // disc_y(P), integer coefficients
  Poly disc_sqfree;  // monic squarefree part over Q
  InfinityModel inf;
  std::vector<BranchPoint> branch_points;  // finite (canonical order), then inf
  int geometric_branch_count = 0;          // counts conjugate points separately

  const BiPoly& P() const { return ext.P; }
  int n() const { return ext.n; }
};

namespace detail {

// Splitting of P(t_b + S, Y) over the formal Laurent field Q((S)), through
// the same polygon/residual reading as the p-adic case but with exact
// S-order bookkeeping. Returns nothing when a repeated factor of the special
// fiber is irrational or a residual is not squarefree; the caller then falls
// back to sampling.
inline std::optional<SplittingType> series_splitting(const BiPoly& P,
                                                     const Rat& t_b,
                                                     const FactorContext& ctx) {
  int n = P.degree_y();
  // Y-coefficients of P(t_b + S, Y), as polynomials in S.
  std::vector<Poly> cs(n + 1);
  for (int j = 0; j <= n; ++j) {
    Poly cj = P.coeff_of_y(j);
    cj.set_var('S');
    cs[j] = taylor_shift(cj, t_b);
  }
  Poly fiber = P.eval_t(t_b);  // fiber at S = 0
  std::map<Poly, int, decltype([](const Poly& a, const Poly& b) {
             return canonical_less(a, b);
           })>
      mult;
  for (const auto& q : factor_over_q(fiber, ctx)) mult[q] += 1;

  SplittingType st;
  for (const auto& [g, e] : mult) {
    if (e == 1) {
      st.add(1, g.degree());
      continue;
    }
    if (g.degree() > 1) return std::nullopt;
    Rat r = -g[0];
    // Z-coefficients of P(t_b + S, r + Z): G_i(S) = sum_j C(j,i) r^(j-i) cs[j]
    std::vector<Poly> G(n + 1, Poly::zero('S'));
    for (int j = 0; j <= n; ++j) {
      Rat binom(1);
      Rat rp(1);
      // accumulate from i = j downward: C(j,i) r^(j-i)
      for (int i = j; i >= 0; --i) {
        G[i] = G[i] + cs[j] * (binom * rp);
        if (i > 0) {
          binom = binom * Rat(i) / Rat(j - i + 1);
          rp = rp * r;
        }
      }
    }
    int start = 0;
    while (start <= n && G[start].is_zero()) ++start;
    if (start > 0) {
      // (Y - r) divides P itself; treat each stripped power as unramified.
      for (int i = 0; i < start; ++i) st.add(1, 1);
    }
    std::vector<std::pair<int, long long>> pts;
    for (int i = start; i <= n; ++i) {
      if (G[i].is_zero()) continue;
      int ord = 0;
      while (G[i][ord] == 0) ++ord;
      pts.emplace_back(i - start, static_cast<long long>(ord));
    }
    for (const auto& seg : lower_hull(pts)) {
      if (seg.v1 >= seg.v0) continue;
      long long rise = seg.v0 - seg.v1;
      long long gg = std::gcd<long long>(rise, seg.length());
      long long h = rise / gg;
      int eseg = seg.length() / static_cast<int>(gg);
      int len = seg.length() / eseg;
      std::vector<Rat> R(len + 1, Rat(0));
      for (int j = 0; j <= len; ++j)
        R[j] = G[start + seg.x0 + j * eseg][static_cast<int>(seg.v0 - j * h)];
      Poly res(std::move(R), 'x');
      if (poly_gcd(res, res.derivative()).degree() != 0) return std::nullopt;
      for (const auto& rf : factor_over_q(res.monic(), ctx))
        st.add(eseg, rf.degree());
    }
  }
  st.canonicalize();
  if (st.total() != n)
    fail(ErrorKind::Domain, "internal: series splitting misses the degree");
  return st;
}

}  // namespace detail

// ---- prime classification -------------------------------------------------

inline PrimeClassification classify_prime(const Cover& cover, const Int& p) {
  if (!is_prime(p)) fail(ErrorKind::Domain, "classify_prime at a non-prime");
  PrimeClassification out;
  out.p = p;
  if (cover.ext.geometric_group_order % p == 0)
    out.reasons.push_back(BadReason::DividesGroupOrder);

  std::vector<Poly> ms, recips;
  for (const auto& bp : cover.branch_points) {
    ms.push_back(bp.minpoly);
    recips.push_back(bp.reciprocal());
  }
  bool unitize_failed = false;
  for (const auto& list : {ms, recips})
    for (const auto& m : list)
      for (const auto& c : m.coeffs())
        if (valuation(c, p).v < 0) unitize_failed = true;
  if (unitize_failed) out.reasons.push_back(BadReason::FailsToUnitize);

  bool meet = false;
  for (size_t i = 0; i < ms.size() && !meet; ++i)
    for (size_t j = i + 1; j < ms.size() && !meet; ++j) {
      for (const Rat& res :
           {resultant(ms[i], ms[j]), resultant(recips[i], recips[j])}) {
        Valuation v = valuation(res, p);
        if (v.infinite || v.v > 0) meet = true;
      }
    }
  if (meet) out.reasons.push_back(BadReason::BranchPointsMeet);

  if (valuation(Rat(cover.disc.lc()), p).v > 0)
    out.reasons.push_back(BadReason::VerticalSurrogate);

  Poly prod = Poly::one('T');
  for (const auto& bp : cover.branch_points)
    if (!bp.at_infinity) prod = prod * bp.minpoly;
  if (prod.degree() >= 2) {
    Valuation v = valuation(discriminant(prod), p);
    if (v.infinite || v.v > 0)
      out.reasons.push_back(BadReason::RamifiesInBranchField);
  }
  return out;
}

// Smallest residue r mod p with v_p(m(r)) > 0, if any.
inline std::optional<Int> prime_divisor_witness(const Poly& m, const Int& p) {
  if (!is_prime(p)) fail(ErrorKind::Domain, "witness search at a non-prime");
  for (const auto& c : m.coeffs())
    if (valuation(c, p).v < 0)
      fail(ErrorKind::BadPrimeForBranch, "polynomial not p-integral");
  if (m.degree() < 1) return std::nullopt;
  for (Int r = 0; r < p; ++r) {
    Rat val = m.eval(Rat(r));
    Valuation v = valuation(val, p);
    if (v.infinite || v.v > 0) return r;
  }
  return std::nullopt;
}

// ---- inertia inference ----------------------------------------------------

namespace detail {

// Witness specialization with intersection multiplicity exactly 1 against
// the branch point, avoiding roots of the discriminant.
inline std::optional<Int> multiplicity_one_point(const Cover& cover,
                                                 const Poly& m, const Int& p) {
  auto w = prime_divisor_witness(m, p);
  if (!w) return std::nullopt;
  Rat dm = m.derivative().eval(Rat(*w));
  if (dm == 0 || valuation(dm, p).v != 0)
    fail(ErrorKind::DerivativeVanishes,
         "branch polynomial inseparable mod p despite good classification");
  for (Int j = 0; j <= 2 * p; ++j) {
    Int t0 = *w + j * p;
    Rat val = m.eval(Rat(t0));
    if (val == 0) continue;
    if (valuation(val, p).v != 1) continue;
    if (cover.disc.eval(Rat(t0)) == 0) continue;
    return t0;
  }
  return std::nullopt;
}

struct SampleResult {
  CycleType type;
  std::vector<Int> primes;
};

// Method B: agreeing local splittings at >= 3 good primes meeting the branch
// point with multiplicity one.
inline SampleResult sample_inertia(const Cover& cover, const BranchPoint& bp,
                                   const FactorContext& ctx,
                                   int wanted = 3, Int prime_bound = 1000) {
  std::vector<CycleType> samples;
  std::vector<Int> used;
  Int p = 2;
  while (static_cast<int>(samples.size()) < wanted && p <= prime_bound) {
    p = next_prime(p);
    if (!classify_prime(cover, p).good()) continue;
    Poly spec('Y');
    if (bp.at_infinity) {
      spec = cover.inf.Q.eval_t(Rat(p));  // p^(n*w) P(1/p, W/p^w)
    } else {
      auto t0 = multiplicity_one_point(cover, bp.minpoly, p);
      if (!t0) continue;
      spec = cover.P().eval_t(Rat(*t0));
    }
    try {
      SplittingType st = local_splitting(spec, p, ctx);
      samples.push_back(st.expand());
      used.push_back(p);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::IrregularCase ||
          e.kind() == ErrorKind::WildCase ||
          e.kind() == ErrorKind::DegenerateInput)
        continue;  // skip undecidable primes, keep scanning
      throw;
    }
  }
  if (static_cast<int>(samples.size()) < wanted)
    fail(ErrorKind::NoUsablePrime,
         "fewer than " + std::to_string(wanted) +
             " usable sampling primes below the bound");
  for (const auto& s : samples)
    if (!(s == samples[0]))
      fail(ErrorKind::InconsistentSamples,
           "inertia samples disagree across primes");
  return {samples[0], used};
}

}  // namespace detail

// Inference methods for the inertia cycle type at a branch point, applied to
// a cover whose branch list is still being assembled (hence the explicit
// candidate).  Exact Newton reading applies to Q-rational points (and to
// infinity through the reciprocal model); sampling covers the rest.
inline std::optional<std::pair<CycleType, Provenance>> infer_inertia_exact(
    const Cover& cover, const BranchPoint& bp, const FactorContext& ctx) {
  if (bp.at_infinity) {
    auto st = detail::series_splitting(cover.inf.Q, Rat(0), ctx);
    if (!st) return std::nullopt;
    return std::make_pair(st->expand(), Provenance::ExactNewton);
  }
  if (bp.minpoly.degree() != 1) return std::nullopt;
  Rat root = -bp.minpoly[0];
  auto st = detail::series_splitting(cover.P(), root, ctx);
  if (!st) return std::nullopt;
  return std::make_pair(st->expand(), Provenance::ExactNewton);
}

struct AnalyzeOptions {
  // Declared inertia types, keyed by 1-based index into the final branch
  // point list (finite points in canonical order, infinity last).
  std::map<int, CycleType> declared;
  bool trust_declared = false;
  Int sample_bound = Int(1000);
};

struct InertiaResult {
  CycleType type;
  Provenance provenance = Provenance::SampledPrimes;
  std::vector<Int> sample_primes;
};

// Inertia cycle type of a branch point: exact Newton reading where the point
// is Q-rational (or at infinity through the reciprocal model), otherwise
// agreeing local splittings sampled at three good primes.
inline InertiaResult infer_inertia(const Cover& cover, const BranchPoint& bp,
                                   const FactorContext& ctx = {},
                                   Int sample_bound = Int(1000)) {
  if (auto exact = infer_inertia_exact(cover, bp, ctx))
    return {exact->first, exact->second, {}};
  auto sampled = detail::sample_inertia(cover, bp, ctx, 3, sample_bound);
  return {sampled.type, Provenance::SampledPrimes, sampled.primes};
}

inline Cover analyze_cover(const Extension& ext, const AnalyzeOptions& opts = {},
                           const FactorContext& ctx = {}) {
  Cover cover;
  cover.ext = ext;
  cover.disc = disc_y(ext.P);
  cover.disc_sqfree = squarefree_part(cover.disc);
  cover.inf = infinity_model(ext.P);

  std::vector<BranchPoint> candidates;
  for (const auto& m : factor_over_q(cover.disc_sqfree, ctx)) {
    BranchPoint bp;
    bp.at_infinity = false;
    bp.minpoly = m;
    candidates.push_back(std::move(bp));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const BranchPoint& a, const BranchPoint& b) {
              return canonical_less(a.minpoly, b.minpoly);
            });
  {
    BranchPoint inf;
    inf.at_infinity = true;
    inf.minpoly = Poly::one('T');
    candidates.push_back(std::move(inf));
  }

  // Prime classification during sampling needs the candidate minimal
  // polynomials (meet/unitize tests); inertia is not consulted there.
  cover.branch_points = candidates;

  // Infer inertia per candidate; drop candidates with trivial inertia (a
  // vanishing discriminant does not by itself certify ramification).
  std::vector<BranchPoint> kept;
  std::vector<size_t> pending;  // kept[] indices whose inference failed
  for (auto& bp : candidates) {
    try {
      InertiaResult result = infer_inertia(cover, bp, ctx, opts.sample_bound);
      if (result.type.is_identity()) continue;
      bp.inertia = result.type;
      bp.provenance = result.provenance;
      bp.sample_primes = std::move(result.sample_primes);
      kept.push_back(std::move(bp));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoUsablePrime) throw;
      pending.push_back(kept.size());
      kept.push_back(std::move(bp));  // resolved by declaration or rejected
    }
  }
  cover.branch_points = std::move(kept);

  // Declarations: accept user data, cross-checked by sampling unless trusted.
  for (const auto& [index1, declared_type] : opts.declared) {
    int i = index1 - 1;
    if (i < 0 || i >= static_cast<int>(cover.branch_points.size()))
      fail(ErrorKind::Usage, "declared inertia index out of range");
    if (declared_type.is_identity())
      fail(ErrorKind::Domain, "declared inertia must be nontrivial");
    if (declared_type.total() != ext.n)
      fail(ErrorKind::Domain, "declared inertia must partition the degree");
    BranchPoint& bp = cover.branch_points[i];
    if (!opts.trust_declared) {
      auto sampled = detail::sample_inertia(cover, bp, ctx, 3, opts.sample_bound);
      if (!(sampled.type == declared_type))
        fail(ErrorKind::InconsistentSamples,
             "declared inertia contradicts sampled splittings");
      bp.sample_primes = sampled.primes;
    }
    bp.inertia = declared_type;
    bp.provenance = Provenance::Declared;
  }
  for (size_t i : pending) {
    if (cover.branch_points[i].provenance != Provenance::Declared)
      fail(ErrorKind::NoUsablePrime,
           "no inference method available for a branch point; declare it");
  }

  cover.geometric_branch_count = 0;
  for (const auto& bp : cover.branch_points)
    cover.geometric_branch_count += bp.point_degree();
  return cover;
}

// The bad primes all divide one of finitely many integers assembled from the
// branch data; factoring those integers enumerates the bad set exactly (the
// flag reports when a cofactor resisted trial division).
struct BadPrimeSet {
  std::vector<PrimeClassification> bad;
  bool complete = true;
};

inline BadPrimeSet bad_primes(const Cover& cover,
                              const Int& trial_bound = Int(1000000)) {
  std::vector<Int> sources;
  sources.push_back(cover.ext.geometric_group_order);
  sources.push_back(num(cover.disc.lc()));
  std::vector<Poly> ms, recips;
  for (const auto& bp : cover.branch_points) {
    ms.push_back(bp.minpoly);
    recips.push_back(bp.reciprocal());
  }
  for (const auto& list : {ms, recips})
    for (const auto& m : list)
      for (const auto& c : m.coeffs())
        if (c != 0) sources.push_back(den(c));
  for (size_t i = 0; i < ms.size(); ++i)
    for (size_t j = i + 1; j < ms.size(); ++j)
      for (const Rat& res :
           {resultant(ms[i], ms[j]), resultant(recips[i], recips[j])}) {
        if (res != 0) {
          sources.push_back(num(res));
          sources.push_back(den(res));
        }
      }
  Poly prod = Poly::one('T');
  for (const auto& bp : cover.branch_points)
    if (!bp.at_infinity) prod = prod * bp.minpoly;
  if (prod.degree() >= 2) {
    Rat d = discriminant(prod);
    if (d != 0) {
      sources.push_back(num(d));
      sources.push_back(den(d));
    }
  }
  BadPrimeSet out;
  std::set<Int> candidates;
  for (const auto& s : sources) {
    if (s == 0 || s == 1 || s == -1) continue;
    bool complete = true;
    for (const auto& p : trial_division_factors(s, trial_bound, &complete))
      candidates.insert(p);
    out.complete = out.complete && complete;
  }
  for (const auto& p : candidates) {
    PrimeClassification c = classify_prime(cover, p);
    if (!c.good()) out.bad.push_back(std::move(c));
  }
  return out;
}

// Branch points whose minimal polynomial pair admits p as a prime divisor;
// by the ramification dichotomy an empty answer (never possible here, since
// infinity always carries the witness t0 = 1/p) would mean p ramifies in no
// specialization at all.
inline std::vector<int> can_ramify(const Cover& cover, const Int& p) {
  if (!classify_prime(cover, p).good())
    fail(ErrorKind::Domain, "can_ramify expects a good prime");
  std::vector<int> out;
  for (size_t i = 0; i < cover.branch_points.size(); ++i) {
    const auto& bp = cover.branch_points[i];
    if (bp.at_infinity) {
      out.push_back(static_cast<int>(i));  // m_{1/inf} = T has the root 0
      continue;
    }
    if (prime_divisor_witness(bp.minpoly, p) ||
        prime_divisor_witness(bp.reciprocal(), p))
      out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace specforge
