#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "specforge/parse.hpp"
#include "specforge/verify.hpp"

namespace specforge {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

// All arbitrary-precision integers travel as decimal strings; the moduli
// outgrow 64 bits as soon as a handful of conditions stack up.
inline std::string js(const Int& v) { return v.str(); }
inline std::string js(const Rat& v) {
  if (den(v) == 1) return num(v).str();
  return num(v).str() + "/" + den(v).str();
}

inline Int parse_int_str(const std::string& s) {
  if (s.empty()) fail(ErrorKind::Usage, "empty integer field");
  return Int(s);
}
inline Rat parse_rat_str(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

inline json poly_to_json(const Poly& f) {
  json coeffs = json::array();
  for (int i = 0; i <= f.degree(); ++i) coeffs.push_back(js(f[i]));
  return json{{"var", std::string(1, f.var())}, {"coeffs", coeffs}, {"text", f.str()}};
}

inline Poly poly_from_json(const json& j) {
  std::vector<Rat> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_rat_str(c));
  char var = 'T';
  if (j.contains("var")) var = j.at("var").get<std::string>().at(0);
  return Poly(std::move(coeffs), var);
}

inline json splitting_to_json(const SplittingType& st) {
  json pairs = json::array();
  for (const auto& [e, f] : st.pairs) pairs.push_back(json{{"e", e}, {"f", f}});
  return pairs;
}

inline json branch_point_to_json(const BranchPoint& bp) {
  json j;
  j["kind"] = bp.at_infinity ? "infinity" : "finite";
  j["minpoly"] = poly_to_json(bp.minpoly);
  j["inertia"] = bp.inertia.str();
  j["provenance"] = provenance_name(bp.provenance);
  json primes = json::array();
  for (const auto& p : bp.sample_primes) primes.push_back(js(p));
  j["sample_primes"] = primes;
  return j;
}

inline BranchPoint branch_point_from_json(const json& j, int degree) {
  BranchPoint bp;
  bp.at_infinity = j.at("kind").get<std::string>() == "infinity";
  bp.minpoly = poly_from_json(j.at("minpoly"));
  bp.inertia = CycleType::parse(j.at("inertia").get<std::string>(), degree);
  std::string prov = j.at("provenance").get<std::string>();
  if (prov == "declared") bp.provenance = Provenance::Declared;
  else if (prov == "exact-newton") bp.provenance = Provenance::ExactNewton;
  else if (prov == "sampled-primes") bp.provenance = Provenance::SampledPrimes;
  else fail(ErrorKind::Usage, "unknown provenance " + prov);
  if (j.contains("sample_primes"))
    for (const auto& p : j.at("sample_primes"))
      bp.sample_primes.push_back(parse_int_str(p));
  return bp;
}

inline json input_to_json(const Cover& cover, const std::string& source) {
  json j;
  j["poly"] = source.empty() ? cover.P().str() : source;
  j["degree"] = cover.n();
  j["group_order"] = js(cover.ext.geometric_group_order);
  j["closure_regular"] = cover.ext.closure_regular;
  return j;
}

inline json plan_to_json(const Cover& cover, const SpecializationPlan& plan) {
  json j;
  j["mode"] = plan_mode_name(plan.mode);
  j["captures_enabled"] = plan.captures_enabled;
  j["theta"] = js(plan.theta);
  j["modulus"] = js(plan.modulus);
  j["beta"] = js(plan.beta);
  json ledger = json::array();
  for (const auto& e : plan.ledger) {
    json le;
    le["p"] = js(e.p);
    le["exponent"] = e.exponent;
    le["residue"] = js(e.residue);
    le["purpose"] = ledger_purpose_name(e.purpose);
    le["type"] = e.type.str();
    if (e.purpose == LedgerPurpose::Ramified) {
      le["branch"] = e.branch + 1;  // 1-based for humans
      le["a"] = e.a;
    }
    ledger.push_back(le);
  }
  j["ledger"] = ledger;
  json unram = json::array();
  for (const auto& c : plan.unramified)
    unram.push_back(json{{"p", js(c.p)}, {"type", c.target.str()}});
  j["unramified"] = unram;
  json ram = json::array();
  for (const auto& c : plan.ramified)
    ram.push_back(json{{"p", js(c.p)}, {"branch", c.branch + 1}, {"a", c.a}});
  j["ramified"] = ram;
  json caps = json::array();
  for (const auto& c : plan.captures)
    caps.push_back(json{
        {"p", js(c.p)}, {"type", c.type.str()}, {"residue", js(c.residue)}});
  j["captures"] = caps;
  json bps = json::array();
  for (size_t i = 0; i < cover.branch_points.size(); ++i) {
    json bj = branch_point_to_json(cover.branch_points[i]);
    bj["index"] = static_cast<int>(i) + 1;  // what --ram p:INDEX:a refers to
    bps.push_back(bj);
  }
  j["branch_points"] = bps;
  DiscriminantBounds b = discriminant_bounds(cover, plan);
  j["bounds"] = json{{"lower", js(b.lower)},
                     {"lower_applicable", b.lower_applicable},
                     {"upper", js(b.upper)},
                     {"delta", b.delta},
                     {"disc_height", js(b.disc_height)}};
  return j;
}

inline json plan_file_json(const Cover& cover, const SpecializationPlan& plan,
                           const std::string& source) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["input"] = input_to_json(cover, source);
  j["plan"] = plan_to_json(cover, plan);
  return j;
}

struct LoadedPlan {
  Cover cover;
  SpecializationPlan plan;
  std::string source;
};

// Rebuild the cover and plan from a plan file. Branch data (inertia types
// with their provenance) is taken from the file so certificates remain
// reproducible; everything recomputable from P is recomputed.
inline LoadedPlan load_plan(const json& j, const FactorContext& ctx = {}) {
  if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kSchemaVersion)
    fail(ErrorKind::Usage, "unsupported plan schema version");
  const json& input = j.at("input");
  LoadedPlan out;
  out.source = input.at("poly").get<std::string>();
  BiPoly P = parse_poly(out.source);
  Extension ext =
      make_extension(P, parse_int_str(input.at("group_order")),
                     input.at("closure_regular").get<bool>(), ctx);
  out.cover.ext = ext;
  out.cover.disc = disc_y(P);
  out.cover.disc_sqfree = squarefree_part(out.cover.disc);
  out.cover.inf = infinity_model(P);
  const json& pj = j.at("plan");
  for (const auto& bj : pj.at("branch_points")) {
    BranchPoint bp = branch_point_from_json(bj, ext.n);
    if (!bp.at_infinity) {
      auto [q, r] = divmod(out.cover.disc_sqfree, bp.minpoly);
      if (!r.is_zero())
        fail(ErrorKind::Usage, "plan branch point does not divide the discriminant");
    }
    out.cover.branch_points.push_back(std::move(bp));
  }
  out.cover.geometric_branch_count = 0;
  for (const auto& bp : out.cover.branch_points)
    out.cover.geometric_branch_count += bp.point_degree();

  SpecializationPlan& plan = out.plan;
  plan.theta = parse_int_str(pj.at("theta"));
  plan.modulus = parse_int_str(pj.at("modulus"));
  plan.beta = parse_int_str(pj.at("beta"));
  plan.mode = pj.at("mode").get<std::string>() == "strict" ? PlanMode::Strict
                                                           : PlanMode::Relaxed;
  plan.captures_enabled = pj.at("captures_enabled").get<bool>();
  for (const auto& c : pj.at("unramified"))
    plan.unramified.push_back(
        {parse_int_str(c.at("p")),
         CycleType::parse(c.at("type").get<std::string>(), ext.n)});
  for (const auto& c : pj.at("ramified"))
    plan.ramified.push_back({parse_int_str(c.at("p")),
                             c.at("branch").get<int>() - 1,
                             c.at("a").get<int>()});
  for (const auto& c : pj.at("captures"))
    plan.captures.push_back(
        {parse_int_str(c.at("p")),
         CycleType::parse(c.at("type").get<std::string>(), ext.n),
         parse_int_str(c.at("residue"))});
  for (const auto& e : pj.at("ledger")) {
    LedgerEntry le;
    le.p = parse_int_str(e.at("p"));
    le.exponent = e.at("exponent").get<int>();
    le.residue = parse_int_str(e.at("residue"));
    std::string purpose = e.at("purpose").get<std::string>();
    le.purpose = purpose == "unramified" ? LedgerPurpose::Unramified
                 : purpose == "ramified" ? LedgerPurpose::Ramified
                                         : LedgerPurpose::Capture;
    le.type = CycleType::parse(e.at("type").get<std::string>());
    if (e.contains("branch")) le.branch = e.at("branch").get<int>() - 1;
    if (e.contains("a")) le.a = e.at("a").get<int>();
    plan.ledger.push_back(le);
  }
  return out;
}

inline json certificate_to_json(const SpecializationCertificate& cert) {
  json j;
  j["t0"] = js(cert.t0);
  j["in_progression"] = cert.in_progression;
  j["separable"] = cert.separable;
  j["irreducible"] = cert.irreducible;
  j["specialized_poly"] = poly_to_json(cert.specialized);
  json unram = json::array();
  for (const auto& c : cert.unramified) {
    json cj;
    cj["p"] = js(c.p);
    cj["target"] = c.target.str();
    cj["coprime_to_disc"] = c.coprime_to_disc;
    if (c.observed) cj["observed"] = c.observed->str();
    cj["pass"] = c.pass;
    unram.push_back(cj);
  }
  j["unramified"] = unram;
  json ram = json::array();
  for (const auto& c : cert.ramified) {
    json cj;
    cj["p"] = js(c.p);
    cj["branch"] = c.branch + 1;
    cj["a"] = c.a;
    cj["inertia"] = c.inertia.str();
    cj["expected_power"] = c.expected_power.str();
    cj["observed_multiplicity"] = c.observed_multiplicity;
    if (c.observed_splitting)
      cj["observed_splitting"] = splitting_to_json(*c.observed_splitting);
    cj["multiplicity_matches"] = c.multiplicity_matches;
    cj["e_set_matches"] = c.e_set_matches;
    cj["order_matches"] = c.order_matches;
    cj["note"] = c.note;
    cj["pass"] = c.pass;
    ram.push_back(cj);
  }
  j["ramified"] = ram;
  j["galois_required"] = cert.galois_required;
  if (cert.galois) {
    json g;
    g["group"] = cert.galois->group;
    json ws = json::array();
    for (const auto& w : cert.galois->witnesses)
      ws.push_back(json{{"p", js(w.p)}, {"type", w.type.str()}});
    g["witnesses"] = ws;
    j["galois"] = g;
  }
  json decided = json::array();
  for (const auto& d : cert.ramified_report.decided)
    decided.push_back(json{{"p", js(d.p)},
                           {"splitting", splitting_to_json(d.splitting)},
                           {"ramified", d.ramified}});
  json undecided = json::array();
  for (const auto& p : cert.ramified_report.undecided) undecided.push_back(js(p));
  j["ramified_primes"] = json{
      {"decided", decided},
      {"undecided", undecided},
      {"factorization_complete", cert.ramified_report.factorization_complete}};
  const BoundChainReport& b = cert.bounds;
  j["bound_chain"] = json{{"abs_disc", js(b.abs_disc)},
                          {"lower", js(b.lower)},
                          {"lower_applicable", b.lower_applicable},
                          {"height_endpoint", js(b.height_endpoint)},
                          {"upper", js(b.upper)},
                          {"ramified_product", js(b.ramified_product)},
                          {"ramified_product_divides", b.ramified_product_divides},
                          {"lower_le_disc", b.lower_le_disc},
                          {"disc_le_height_endpoint", b.disc_le_height_endpoint},
                          {"disc_le_upper", b.disc_le_upper},
                          {"pass", b.pass}};
  j["all_pass"] = cert.all_pass;
  return j;
}

}  // namespace specforge
