#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specforge/planner.hpp"

namespace specforge {

struct UnramifiedCheck {
  Int p;
  CycleType target;
  bool coprime_to_disc = false;
  std::optional<CycleType> observed;
  bool pass = false;
};

struct RamifiedCheck {
  Int p;
  int branch = 0;
  int a = 1;
  CycleType inertia;
  CycleType expected_power;
  long long observed_multiplicity = -1;
  std::optional<SplittingType> observed_splitting;
  bool multiplicity_matches = false;
  bool e_set_matches = false;
  bool order_matches = false;  // lcm surrogate for the inertia-class condition
  std::string note;            // the surrogate is a partial check; says so
  bool pass = false;
};

struct GaloisWitness {
  Int p;
  CycleType type;
};

struct GaloisCertificate {
  std::string group;
  std::vector<GaloisWitness> witnesses;
};

struct DecidedPrime {
  Int p;
  SplittingType splitting;
  bool ramified = false;
};

struct RamifiedPrimesReport {
  std::vector<DecidedPrime> decided;
  std::vector<Int> undecided;        // bad / wild / irregular primes
  bool factorization_complete = true;  // trial division found all of |disc|
};

struct BoundChainReport {
  Int abs_disc;
  Int lower;               // product over ramified-condition primes (or 1)
  bool lower_applicable = true;
  Int height_endpoint;     // (1+delta) * H * |t0|^delta
  Int upper;               // closed-form endpoint from the plan data
  Int ramified_product;    // over condition primes and decided extras
  bool ramified_product_divides = false;
  bool lower_le_disc = false;
  bool disc_le_height_endpoint = false;
  bool disc_le_upper = false;
  bool pass = false;
};

struct SpecializationCertificate {
  Int t0;
  bool in_progression = false;
  bool separable = false;
  bool irreducible = false;
  Poly specialized;
  std::vector<UnramifiedCheck> unramified;
  std::vector<RamifiedCheck> ramified;
  bool galois_required = false;
  std::optional<GaloisCertificate> galois;
  RamifiedPrimesReport ramified_report;
  BoundChainReport bounds;
  bool all_pass = false;
};

// ---- Galois certification ---------------------------------------------------

namespace detail {

inline std::optional<Int> exact_sqrt(const Int& n) {
  if (n < 0) return std::nullopt;
  Int r = sqrt(n);
  for (Int c = r - 1; c <= r + 1; ++c)
    if (c >= 0 && c * c == n) return c;
  return std::nullopt;
}

inline bool is_q_cycle_type(const CycleType& t, int q, int n) {
  std::vector<int> want;
  want.push_back(q);
  for (int i = 0; i < n - q; ++i) want.push_back(1);
  return t == CycleType(want);
}

}  // namespace detail

// Dedekind-route S_n certification: transitivity from irreducibility, plus
// Frobenius witnesses of a transposition and of a q-cycle for a prime
// q > n/2 (Jordan). Never claims a negative: nullopt means inconclusive.
inline std::optional<GaloisCertificate> certify_galois_sn(
    const Poly& f, Int witness_bound, const FactorContext& ctx = {}) {
  int n = f.degree();
  if (n < 2) fail(ErrorKind::Domain, "degree must be >= 2");
  if (!f.is_integral() || !f.is_monic())
    fail(ErrorKind::Domain, "certification needs a monic integer polynomial");
  if (!is_irreducible_over_q(f, ctx)) return std::nullopt;
  Rat dsc = discriminant(f);
  std::vector<int> cycle_primes;
  for (int q = std::max(3, n / 2 + 1); q <= n; ++q)
    if (is_prime(Int(q))) cycle_primes.push_back(q);
  if (n > 2 && cycle_primes.empty()) return std::nullopt;
  std::optional<GaloisWitness> transposition, long_cycle;
  std::vector<int> transposition_parts{2};
  for (int i = 0; i < n - 2; ++i) transposition_parts.push_back(1);
  CycleType transposition_type(transposition_parts);
  for (Int p = 2; p <= witness_bound; p = next_prime(p)) {
    if (valuation(dsc, p).v != 0) continue;
    CycleType t = frobenius_cycle_type(f, p, ctx);
    if (!transposition && t == transposition_type) transposition = {p, t};
    if (!long_cycle)
      for (int q : cycle_primes)
        if (detail::is_q_cycle_type(t, q, n)) {
          long_cycle = {p, t};
          break;
        }
    if (transposition && (n == 2 || long_cycle)) break;
  }
  if (!transposition || (n > 2 && !long_cycle)) return std::nullopt;
  GaloisCertificate cert;
  cert.group = "S" + std::to_string(n);
  cert.witnesses.push_back(*transposition);
  if (n > 2) cert.witnesses.push_back(*long_cycle);
  return cert;
}

// A_n certification: square discriminant pins Gal inside A_n; a 3-cycle
// witness plus a q-cycle witness (odd prime q > n/2, for primitivity) pins it
// down to A_n by Jordan's 3-cycle theorem.
inline std::optional<GaloisCertificate> certify_galois_an(
    const Poly& f, Int witness_bound, const FactorContext& ctx = {}) {
  int n = f.degree();
  if (n < 3) fail(ErrorKind::Domain, "degree must be >= 3");
  if (!f.is_integral() || !f.is_monic())
    fail(ErrorKind::Domain, "certification needs a monic integer polynomial");
  if (!is_irreducible_over_q(f, ctx)) return std::nullopt;
  Rat dsc = discriminant(f);
  if (den(dsc) != 1 || !detail::exact_sqrt(num(dsc))) return std::nullopt;
  std::vector<int> cycle_primes;
  for (int q = n / 2 + 1; q <= n; ++q)
    if (q % 2 == 1 && is_prime(Int(q))) cycle_primes.push_back(q);
  if (cycle_primes.empty()) return std::nullopt;
  std::vector<int> three_parts{3};
  for (int i = 0; i < n - 3; ++i) three_parts.push_back(1);
  CycleType three_type(three_parts);
  std::optional<GaloisWitness> three, long_cycle;
  for (Int p = 2; p <= witness_bound; p = next_prime(p)) {
    if (valuation(dsc, p).v != 0) continue;
    CycleType t = frobenius_cycle_type(f, p, ctx);
    if (!three && t == three_type) three = {p, t};
    if (!long_cycle)
      for (int q : cycle_primes)
        if (detail::is_q_cycle_type(t, q, n)) {
          long_cycle = {p, t};
          break;
        }
    if (three && long_cycle) break;
  }
  if (!three || !long_cycle) return std::nullopt;
  GaloisCertificate cert;
  cert.group = "A" + std::to_string(n);
  cert.witnesses.push_back(*three);
  if (!(long_cycle->p == three->p)) cert.witnesses.push_back(*long_cycle);
  return cert;
}

// ---- ramified-prime survey --------------------------------------------------

// Classify the primes dividing disc P(t0, Y): decided good tame primes carry
// their splitting; bad / wild / irregular primes land in the undecided
// bucket, where the inertia framework makes no prediction either.
inline RamifiedPrimesReport ramified_primes(const Cover& cover, const Int& t0,
                                            const std::vector<Int>& extra_primes = {},
                                            const Int& trial_bound = Int(1000000),
                                            const FactorContext& ctx = {}) {
  Int d = cover.disc.eval_int(t0);
  if (d == 0) fail(ErrorKind::DegenerateInput, "t0 is a root of the discriminant");
  RamifiedPrimesReport report;
  std::vector<Int> primes =
      trial_division_factors(d, trial_bound, &report.factorization_complete);
  for (const auto& p : extra_primes)
    if (d % p == 0 &&
        std::find(primes.begin(), primes.end(), p) == primes.end())
      primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  Poly fiber = cover.P().eval_t(Rat(t0));
  for (const auto& p : primes) {
    if (p == 2 || !classify_prime(cover, p).good()) {
      report.undecided.push_back(p);
      continue;
    }
    try {
      SplittingType st = local_splitting(fiber, p, ctx);
      report.decided.push_back({p, st, !st.unramified()});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::IrregularCase || e.kind() == ErrorKind::WildCase)
        report.undecided.push_back(p);
      else
        throw;
    }
  }
  return report;
}

// ---- bound chain -------------------------------------------------------------

inline BoundChainReport check_bound_chain(const Cover& cover,
                                          const SpecializationPlan& plan,
                                          const Int& t0,
                                          const RamifiedPrimesReport& report) {
  BoundChainReport out;
  Int d = cover.disc.eval_int(t0);
  if (d == 0) fail(ErrorKind::DegenerateInput, "t0 is a root of the discriminant");
  out.abs_disc = abs(d);
  DiscriminantBounds bounds = discriminant_bounds(cover, plan);
  out.lower = bounds.lower;
  out.lower_applicable = bounds.lower_applicable;
  out.upper = bounds.upper;
  int delta = bounds.delta;
  Int abs_t0 = abs(t0);
  out.height_endpoint = Int(delta + 1) * bounds.disc_height *
                        ipow(abs_t0, static_cast<unsigned>(delta));
  out.ramified_product = 1;
  for (const auto& c : plan.ramified) out.ramified_product *= c.p;
  for (const auto& dp : report.decided) {
    if (!dp.ramified) continue;
    bool in_plan = false;
    for (const auto& c : plan.ramified)
      if (c.p == dp.p) in_plan = true;
    if (!in_plan) out.ramified_product *= dp.p;
  }
  out.ramified_product_divides = (d % out.ramified_product == 0);
  out.lower_le_disc = out.lower <= out.abs_disc;
  out.disc_le_height_endpoint = out.abs_disc <= out.height_endpoint;
  out.disc_le_upper = out.abs_disc <= out.upper;
  out.pass = out.ramified_product_divides && out.lower_le_disc &&
             out.disc_le_height_endpoint && out.disc_le_upper;
  return out;
}

// ---- full certificate --------------------------------------------------------

struct VerifyOptions {
  Int galois_witness_bound = Int(500);
  Int trial_division_bound = Int(1000000);
};

inline SpecializationCertificate verify_specialization(
    const Cover& cover, const SpecializationPlan& plan, const Int& t0,
    const VerifyOptions& opts = {}, const FactorContext& ctx = {}) {
  SpecializationCertificate cert;
  cert.t0 = t0;
  Int disc_val = cover.disc.eval_int(t0);
  if (disc_val == 0)
    fail(ErrorKind::DegenerateInput, "t0 is a branch point of the fiber");
  cert.in_progression = mod_reduce(t0 - plan.theta, plan.modulus) == 0;
  cert.separable = true;
  cert.specialized = cover.P().eval_t(Rat(t0));
  cert.irreducible = factor_over_z(cert.specialized, ctx).size() == 1;

  for (const auto& c : plan.unramified) {
    UnramifiedCheck check;
    check.p = c.p;
    check.target = c.target;
    check.coprime_to_disc = disc_val % c.p != 0;
    if (check.coprime_to_disc) {
      check.observed = frobenius_cycle_type(cert.specialized, c.p, ctx);
      check.pass = *check.observed == c.target;
    }
    cert.unramified.push_back(std::move(check));
  }

  for (const auto& c : plan.ramified) {
    RamifiedCheck check;
    check.p = c.p;
    check.branch = c.branch;
    check.a = c.a;
    const BranchPoint& bp = cover.branch_points.at(c.branch);
    check.inertia = bp.inertia;
    check.expected_power = power_cycle_type(bp.inertia, c.a);
    check.observed_multiplicity = intersection_multiplicity(Rat(t0), bp, c.p);
    check.multiplicity_matches = check.observed_multiplicity == c.a;
    try {
      SplittingType st = local_splitting(cert.specialized, c.p, ctx);
      check.observed_splitting = st;
      check.e_set_matches =
          st.ramification_set() == check.expected_power.distinct_parts();
      long long observed_lcm = 1;
      for (int e : st.ramification_set())
        observed_lcm = std::lcm<long long>(observed_lcm, e);
      check.order_matches = observed_lcm == check.expected_power.order();
    } catch (const Error& e) {
      check.note = std::string("splitting undecided: ") + e.what();
    }
    check.note += check.note.empty() ? "" : "; ";
    check.note +=
        "inertia-class condition checked via the lcm surrogate only (partial)";
    check.pass = check.multiplicity_matches && check.e_set_matches &&
                 check.order_matches;
    cert.ramified.push_back(std::move(check));
  }

  const Int& order = cover.ext.geometric_group_order;
  cert.galois_required = order == factorial(cover.n());
  if (cert.irreducible) {
    if (cert.galois_required)
      cert.galois = certify_galois_sn(cert.specialized,
                                      opts.galois_witness_bound, ctx);
    else if (cover.n() >= 3 && 2 * order == factorial(cover.n()))
      cert.galois = certify_galois_an(cert.specialized,
                                      opts.galois_witness_bound, ctx);
  }

  std::vector<Int> plan_primes;
  for (const auto& c : plan.ramified) plan_primes.push_back(c.p);
  cert.ramified_report =
      ramified_primes(cover, t0, plan_primes, opts.trial_division_bound, ctx);
  cert.bounds = check_bound_chain(cover, plan, t0, cert.ramified_report);

  bool conditions_ok = true;
  for (const auto& c : cert.unramified) conditions_ok = conditions_ok && c.pass;
  for (const auto& c : cert.ramified) conditions_ok = conditions_ok && c.pass;
  cert.all_pass = cert.in_progression && cert.separable && cert.irreducible &&
                  conditions_ok &&
                  (!cert.galois_required || cert.galois.has_value()) &&
                  cert.bounds.pass;
  return cert;
}

}  // namespace specforge
