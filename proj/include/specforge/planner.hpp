#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "specforge/cover.hpp"

namespace specforge {

struct UnramifiedCondition {
  Int p;
  CycleType target;  // residue-degree multiset to realize at p
};

struct RamifiedCondition {
  Int p;
  int branch = 0;  // 0-based index into Cover::branch_points
  int a = 1;       // prescribed intersection multiplicity
};

enum class PlanMode { Relaxed, Strict };

inline const char* plan_mode_name(PlanMode m) {
  return m == PlanMode::Relaxed ? "relaxed" : "strict";
}

struct CaptureAssignment {
  Int p;
  CycleType type;
  Int residue;
};

enum class LedgerPurpose { Unramified, Ramified, Capture };

inline const char* ledger_purpose_name(LedgerPurpose p) {
  switch (p) {
    case LedgerPurpose::Unramified: return "unramified";
    case LedgerPurpose::Ramified: return "ramified";
    case LedgerPurpose::Capture: return "capture";
  }
  return "?";
}

struct LedgerEntry {
  Int p;
  int exponent = 1;  // congruence holds mod p^exponent
  Int residue;
  LedgerPurpose purpose = LedgerPurpose::Unramified;
  CycleType type;       // target / expected power type / capture type
  int branch = -1;      // ramified entries
  int a = 0;            // ramified entries
};

// Arithmetic progression theta mod M realizing all requested local behavior.
struct SpecializationPlan {
  Int theta;
  Int modulus;
  Int beta;  // product of capture primes (1 when none)
  PlanMode mode = PlanMode::Relaxed;
  bool captures_enabled = true;
  std::vector<LedgerEntry> ledger;
  std::vector<UnramifiedCondition> unramified;
  std::vector<RamifiedCondition> ramified;
  std::vector<CaptureAssignment> captures;
};

// v_p-distance between a specialization point and a branch point, in the
// coordinate where both are integral.
inline long long intersection_multiplicity(const Rat& t0, const BranchPoint& bp,
                                           const Int& p) {
  if (!is_prime(p)) fail(ErrorKind::Domain, "intersection at a non-prime");
  const Poly& m = bp.minpoly;
  Poly mr = bp.reciprocal();
  for (const Poly* f : std::initializer_list<const Poly*>{&m, &mr})
    for (const auto& c : f->coeffs())
      if (valuation(c, p).v < 0)
        fail(ErrorKind::BadPrimeForBranch, "prime fails to unitize the branch point");
  auto finite_or_fail = [&](const Rat& val) {
    Valuation v = valuation(val, p);
    if (v.infinite)
      fail(ErrorKind::Domain, "t0 is a root of the branch polynomial");
    return v.v;
  };
  Valuation vt = valuation(t0, p);
  if (vt.infinite || vt.v > 0) {
    if (bp.at_infinity) return 0;  // m = 1
    return std::max<long long>(finite_or_fail(m.eval(t0)), 0);
  }
  if (vt.v < 0) {
    return std::max<long long>(finite_or_fail(mr.eval(Rat(1) / t0)), 0);
  }
  // v_p(t0) = 0: both coordinates apply and must agree.
  long long direct = bp.at_infinity ? 0 : finite_or_fail(m.eval(t0));
  long long recip = finite_or_fail(mr.eval(Rat(1) / t0));
  if (bp.at_infinity) recip = std::max<long long>(recip, 0);
  if (direct != recip)
    fail(ErrorKind::Domain, "internal: intersection formulas disagree");
  return direct;
}

// Per-prime residue forcing v_p(m(theta_p + u*p^(a+1))) = a for every u.
// Newton lifting along m from a witness root, then a p^a shift to pin the
// multiplicity exactly (the Taylor-formula trick).
inline Int ramified_residue(const Poly& m, const Int& p, int a) {
  if (a < 1) fail(ErrorKind::Domain, "multiplicity must be >= 1");
  auto w = prime_divisor_witness(m, p);
  if (!w)
    fail(ErrorKind::WitnessNotFound,
         "branch polynomial has no root mod " + p.str());
  Int pk = ipow(p, static_cast<unsigned>(a + 1));
  Int r = *w;
  auto val_at = [&](const Int& x) { return valuation(m.eval(Rat(x)), p); };
  {
    Rat dm = m.derivative().eval(Rat(r));
    if (dm == 0 || valuation(dm, p).v != 0)
      fail(ErrorKind::DerivativeVanishes,
           "witness root is not simple mod p (bad prime leaked in)");
  }
  auto to_residue = [&](const Rat& q) {
    return mod_reduce(num(q) % pk * mod_inv(den(q) % pk, pk), pk);
  };
  Valuation v = val_at(r);
  int guard = 0;
  while (!v.infinite && v.v < a) {
    Rat fv = m.eval(Rat(r));
    Rat dv = m.derivative().eval(Rat(r));
    r = mod_reduce(r - to_residue(fv) * mod_inv(to_residue(dv), pk), pk);
    v = val_at(r);
    if (++guard > a + 64)
      fail(ErrorKind::Domain, "internal: Newton lifting stalled");
  }
  // The congruence class mod p^a carries the construction; take its least
  // representative, then shift by p^a when the multiplicity overshoots.
  r = mod_reduce(r, ipow(p, static_cast<unsigned>(a)));
  v = val_at(r);
  if (v.infinite || v.v > a) {
    r = r + ipow(p, static_cast<unsigned>(a));
    v = val_at(r);
  }
  if (v.infinite || v.v != a)
    fail(ErrorKind::Domain, "internal: exact multiplicity not reached");
  return r;
}

// theta and modulus for a list of (p, branch polynomial, a) requirements.
inline std::pair<Int, Int> construct_theta(
    const std::vector<std::tuple<Int, Poly, int>>& conditions) {
  std::vector<std::pair<Int, Int>> congruences;
  for (const auto& [p, m, a] : conditions) {
    Int residue = ramified_residue(m, p, a);
    congruences.emplace_back(residue, ipow(p, static_cast<unsigned>(a + 1)));
  }
  return crt_combine(congruences);
}

// Smallest residue r mod p whose fiber is squarefree mod p with the requested
// factor-degree multiset.
inline Int unramified_residue_search(const Cover& cover, const Int& p,
                                     const CycleType& target,
                                     const FactorContext& ctx = {}) {
  if (target.total() != cover.n())
    fail(ErrorKind::Domain, "target type must partition the degree");
  for (Int r = 0; r < p; ++r) {
    if (cover.disc.eval_int(r) % p == 0) continue;
    Poly fiber = cover.P().eval_t(Rat(r));
    if (CycleType(factor_degrees_mod_p(fiber, p, ctx)) == target) return r;
  }
  fail(ErrorKind::NotFound,
       "no residue mod " + p.str() + " realizes type " + target.str());
}

namespace detail {

// Nontrivial cycle types the Galois capture must cover. Cycle types stand in
// for conjugacy classes, which is exactly right for S_n and sufficient for
// the A_n route we certify.
inline std::vector<CycleType> required_capture_types(const Cover& cover) {
  int n = cover.n();
  const Int& order = cover.ext.geometric_group_order;
  bool sym = order == factorial(n);
  bool alt = 2 * order == factorial(n);
  if (!sym && !alt)
    fail(ErrorKind::Domain,
         "capture planning is implemented for S_n and A_n group orders");
  std::vector<CycleType> out;
  for (const auto& t : all_cycle_types(n)) {
    if (t.is_identity()) continue;
    if (alt && !is_even_type(t)) continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace detail

// One capture prime per required type not already covered, scanning good
// primes above every condition/forbidden prime. Strict mode reproduces the
// paper's constraints (p >= r^2 |G|^2, all types captured); relaxed mode lets
// condition types count toward coverage.
inline std::vector<CaptureAssignment> capture_conditions(
    const Cover& cover, const std::vector<Int>& forbidden, PlanMode mode,
    const std::vector<UnramifiedCondition>& unram = {},
    const std::vector<RamifiedCondition>& ram = {},
    const FactorContext& ctx = {}, Int prime_cap = Int(100000)) {
  std::vector<CycleType> required = detail::required_capture_types(cover);
  std::set<CycleType> covered;
  if (mode == PlanMode::Relaxed) {
    std::vector<CycleType> provided;
    for (const auto& c : unram) provided.push_back(c.target);
    for (const auto& c : ram) {
      const auto& bp = cover.branch_points.at(c.branch);
      provided.push_back(power_cycle_type(bp.inertia, c.a));
    }
    for (const auto& t : provided) {
      // A single element of this type generating the whole group settles the
      // capture outright (the n = 2 ramified-transposition situation).
      if (!t.is_identity() && Int(t.order()) == cover.ext.geometric_group_order)
        return {};
    }
    for (const auto& c : unram) covered.insert(c.target);
  }

  Int start = 0;
  for (const auto& p : forbidden) start = std::max(start, p);
  for (const auto& c : unram) start = std::max(start, c.p);
  for (const auto& c : ram) start = std::max(start, c.p);
  if (mode == PlanMode::Strict) {
    Int r2g2 = Int(cover.geometric_branch_count) *
               Int(cover.geometric_branch_count) *
               cover.ext.geometric_group_order * cover.ext.geometric_group_order;
    start = std::max(start, r2g2 - 1);
  }
  std::set<Int> skip(forbidden.begin(), forbidden.end());
  for (const auto& c : unram) skip.insert(c.p);
  for (const auto& c : ram) skip.insert(c.p);

  std::vector<CaptureAssignment> out;
  Int q = start;
  for (const auto& type : required) {
    if (covered.count(type)) continue;
    while (true) {
      q = next_prime(q);
      if (q > prime_cap)
        fail(ErrorKind::NotFound, "capture prime search exhausted");
      if (skip.count(q)) continue;
      if (!classify_prime(cover, q).good()) continue;
      try {
        Int residue = unramified_residue_search(cover, q, type, ctx);
        out.push_back({q, type, residue});
        skip.insert(q);
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotFound) throw;
      }
    }
  }
  return out;
}

struct PlanOptions {
  PlanMode mode = PlanMode::Relaxed;
  bool captures = true;
};

inline SpecializationPlan build_plan(const Cover& cover,
                                     std::vector<UnramifiedCondition> unram,
                                     std::vector<RamifiedCondition> ram,
                                     const PlanOptions& opts = {},
                                     const FactorContext& ctx = {}) {
  std::set<Int> seen;
  for (const auto& c : unram)
    if (!seen.insert(c.p).second)
      fail(ErrorKind::Domain, "condition primes must be pairwise distinct");
  for (const auto& c : ram)
    if (!seen.insert(c.p).second)
      fail(ErrorKind::Domain, "condition primes must be pairwise distinct");

  SpecializationPlan plan;
  plan.mode = opts.mode;
  plan.captures_enabled = opts.captures;

  std::vector<std::pair<Int, Int>> congruences;
  for (const auto& c : unram) {
    if (!classify_prime(cover, c.p).good())
      fail(ErrorKind::Domain, c.p.str() + " is a bad prime for this cover");
    Int residue = unramified_residue_search(cover, c.p, c.target, ctx);
    congruences.emplace_back(residue, c.p);
    plan.ledger.push_back({c.p, 1, residue, LedgerPurpose::Unramified, c.target});
  }
  for (const auto& c : ram) {
    if (!classify_prime(cover, c.p).good())
      fail(ErrorKind::Domain, c.p.str() + " is a bad prime for this cover");
    if (c.branch < 0 || c.branch >= static_cast<int>(cover.branch_points.size()))
      fail(ErrorKind::Usage, "ramified condition names an unknown branch point");
    const BranchPoint& bp = cover.branch_points[c.branch];
    if (bp.at_infinity)
      fail(ErrorKind::Domain,
           "integer progressions cannot meet the branch point at infinity; "
           "pick a finite branch point");
    if (c.a < 1) fail(ErrorKind::Domain, "multiplicity must be >= 1");
    Int residue = ramified_residue(bp.minpoly, c.p, c.a);
    Int mod = ipow(c.p, static_cast<unsigned>(c.a + 1));
    congruences.emplace_back(residue, mod);
    LedgerEntry entry{c.p, c.a + 1, residue, LedgerPurpose::Ramified,
                      power_cycle_type(bp.inertia, c.a), c.branch, c.a};
    plan.ledger.push_back(entry);
  }
  plan.beta = 1;
  if (opts.captures) {
    plan.captures = capture_conditions(cover, {}, opts.mode, unram, ram, ctx);
    for (const auto& cap : plan.captures) {
      congruences.emplace_back(cap.residue, cap.p);
      plan.ledger.push_back(
          {cap.p, 1, cap.residue, LedgerPurpose::Capture, cap.type});
      plan.beta *= cap.p;
    }
  }
  auto [theta0, modulus] = crt_combine(congruences);
  plan.theta = theta0 == 0 ? modulus : theta0;  // normalize into [1, M]
  plan.modulus = modulus;
  plan.unramified = std::move(unram);
  plan.ramified = std::move(ram);
  std::sort(plan.ledger.begin(), plan.ledger.end(),
            [](const LedgerEntry& a, const LedgerEntry& b) { return a.p < b.p; });
  // Every ledger congruence is re-verified on the assembled theta.
  for (const auto& entry : plan.ledger) {
    Int m = ipow(entry.p, static_cast<unsigned>(entry.exponent));
    if (mod_reduce(plan.theta, m) != entry.residue)
      fail(ErrorKind::Domain, "internal: CRT ledger verification failed");
  }
  return plan;
}

struct DiscriminantBounds {
  Int lower;  // product of ramified-condition primes, or 1
  Int upper;  // the closed-form upper endpoint
  bool lower_applicable = true;
  int delta = 0;
  Int disc_height;
};

inline DiscriminantBounds discriminant_bounds(const Cover& cover,
                                              const SpecializationPlan& plan) {
  DiscriminantBounds b;
  b.delta = cover.disc.degree();
  if (b.delta < 1) fail(ErrorKind::Domain, "constant discriminant");
  b.disc_height = height(cover.disc);
  b.lower = 1;
  b.lower_applicable = true;
  for (const auto& c : plan.ramified) {
    const auto& bp = cover.branch_points.at(c.branch);
    if (power_cycle_type(bp.inertia, c.a).is_identity()) b.lower_applicable = false;
  }
  if (b.lower_applicable)
    for (const auto& c : plan.ramified) b.lower *= c.p;
  Int condition_part = plan.modulus / plan.beta;
  b.upper = ipow(Int(b.delta) + 1, static_cast<unsigned>(b.delta + 1)) *
            b.disc_height * ipow(plan.beta, static_cast<unsigned>(b.delta)) *
            ipow(condition_part, static_cast<unsigned>(b.delta));
  return b;
}

// Smallest progression member avoiding the discriminant roots; the window
// u in [0, delta] always contains one.
inline Int select_t0(const Cover& cover, const SpecializationPlan& plan) {
  int delta = cover.disc.degree();
  for (int u = 0; u <= delta; ++u) {
    Int t0 = plan.theta + Int(u) * plan.modulus;
    if (cover.disc.eval_int(t0) != 0) return t0;
  }
  fail(ErrorKind::Domain, "internal: pigeonhole violated in select_t0");
}

}  // namespace specforge
