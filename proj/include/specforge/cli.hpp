#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "specforge/json_io.hpp"

namespace specforge::cli {

// Exit codes: 0 success, 1 check failure, 2 usage/parse error,
// 3 typed computational error (reported as machine-readable JSON).
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kComputational = 3;

namespace detail {

inline std::pair<std::string, std::string> split_once(const std::string& s,
                                                      char sep) {
  auto pos = s.find(sep);
  if (pos == std::string::npos)
    fail(ErrorKind::Usage, "expected '" + std::string(1, sep) + "' in '" + s + "'");
  return {s.substr(0, pos), s.substr(pos + 1)};
}

struct CommonArgs {
  std::string poly;
  std::string group_order;
  std::vector<std::string> declare_inertia;
  bool trust_declared = false;
  bool closure_regular = false;  // declaration flag; the default is assumed
};

inline Cover analyze_from_args(const CommonArgs& args, const FactorContext& ctx,
                               std::string* source) {
  BiPoly P = parse_poly(args.poly);
  *source = args.poly;
  std::optional<Int> order;
  if (!args.group_order.empty()) order = parse_int_str(args.group_order);
  Extension ext = make_extension(P, order, true, ctx);
  AnalyzeOptions opts;
  opts.trust_declared = args.trust_declared;
  for (const auto& d : args.declare_inertia) {
    auto [index, type] = split_once(d, ':');
    opts.declared[std::stoi(index)] = CycleType::parse(type, ext.n);
  }
  return analyze_cover(ext, opts, ctx);
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"specforge: specialization points of covers of the line with "
               "prescribed local behavior, exactly verified"};
  app.require_subcommand(1);

  detail::CommonArgs common;
  std::uint64_t seed = 0;
  if (const char* env = std::getenv("SPECFORGE_SEED")) seed = std::strtoull(env, nullptr, 10);
  app.add_option("--seed", seed, "factorization seed (env SPECFORGE_SEED)");

  auto add_common = [&](CLI::App* cmd, bool need_poly) {
    if (need_poly)
      cmd->add_option("--poly", common.poly, "defining polynomial P(T,Y)")
          ->required();
    cmd->add_option("--group-order", common.group_order,
                    "declared |geometric Galois group| (default n!)");
    cmd->add_option("--declare-inertia", common.declare_inertia,
                    "declare inertia for a branch point, INDEX:TYPE");
    cmd->add_flag("--trust-declared", common.trust_declared,
                  "skip sampling cross-checks of declared inertia");
    cmd->add_flag("--closure-regular", common.closure_regular,
                  "declare the Galois closure Q-regular (assumed regardless)");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "branch points, inertia, bad primes");
  add_common(analyze_cmd, true);

  auto* plan_cmd = app.add_subcommand("plan", "build a specialization progression");
  add_common(plan_cmd, true);
  std::vector<std::string> unram_args, ram_args;
  std::string mode_arg = "relaxed";
  bool no_captures = false;
  std::string out_path;
  plan_cmd->add_option("--unram", unram_args, "unramified condition p:TYPE");
  plan_cmd->add_option("--ram", ram_args, "ramified condition p:BRANCH:a");
  plan_cmd->add_option("--mode", mode_arg, "capture mode: relaxed|strict")
      ->check(CLI::IsMember({"relaxed", "strict"}));
  plan_cmd->add_flag("--no-captures", no_captures, "skip Galois capture primes");
  plan_cmd->add_option("-o,--out", out_path, "also write the plan JSON here");

  auto* search_cmd = app.add_subcommand("search", "first valid t0 values with certificates");
  std::string plan_path;
  int count = 1;
  search_cmd->add_option("--plan", plan_path, "plan file")->required();
  search_cmd->add_option("--count", count, "number of specializations");

  auto* verify_cmd = app.add_subcommand("verify", "verify one specialization point");
  std::string verify_poly, t0_arg, verify_plan_path;
  verify_cmd->add_option("--poly", verify_poly, "cross-check against the plan's polynomial");
  verify_cmd->add_option("--t0", t0_arg, "specialization point")->required();
  verify_cmd->add_option("--plan", verify_plan_path, "plan file")->required();

  auto* bounds_cmd = app.add_subcommand("bounds", "discriminant bound endpoints");
  std::string bounds_plan_path;
  bounds_cmd->add_option("--plan", bounds_plan_path, "plan file")->required();

  std::vector<const char*> argv;
  argv.push_back("specforge");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  FactorContext ctx{seed};
  try {
    if (analyze_cmd->parsed()) {
      std::string source;
      Cover cover = detail::analyze_from_args(common, ctx, &source);
      json j;
      j["schema_version"] = kSchemaVersion;
      j["input"] = input_to_json(cover, source);
      json bps = json::array();
      for (size_t i = 0; i < cover.branch_points.size(); ++i) {
        json bj = branch_point_to_json(cover.branch_points[i]);
        bj["index"] = static_cast<int>(i) + 1;
        bps.push_back(bj);
      }
      BadPrimeSet bad = bad_primes(cover);
      json badj = json::array();
      for (const auto& c : bad.bad) {
        json reasons = json::array();
        for (auto r : c.reasons) reasons.push_back(bad_reason_name(r));
        badj.push_back(json{{"p", js(c.p)}, {"reasons", reasons}});
      }
      j["analysis"] = json{{"branch_points", bps},
                           {"bad_primes", badj},
                           {"bad_primes_complete", bad.complete},
                           {"geometric_branch_count", cover.geometric_branch_count},
                           {"infinity_weight", cover.inf.w}};
      detail::emit(out, j);
      return kOk;
    }
    if (plan_cmd->parsed()) {
      std::string source;
      Cover cover = detail::analyze_from_args(common, ctx, &source);
      std::vector<UnramifiedCondition> unram;
      for (const auto& s : unram_args) {
        auto [p, type] = detail::split_once(s, ':');
        unram.push_back({parse_int_str(p), CycleType::parse(type, cover.n())});
      }
      std::vector<RamifiedCondition> ram;
      for (const auto& s : ram_args) {
        auto [p, rest] = detail::split_once(s, ':');
        auto [branch, a] = detail::split_once(rest, ':');
        ram.push_back({parse_int_str(p), std::stoi(branch) - 1, std::stoi(a)});
      }
      PlanOptions popts;
      popts.mode = mode_arg == "strict" ? PlanMode::Strict : PlanMode::Relaxed;
      popts.captures = !no_captures;
      SpecializationPlan plan = build_plan(cover, unram, ram, popts, ctx);
      json j = plan_file_json(cover, plan, source);
      detail::emit(out, j);
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) fail(ErrorKind::Usage, "cannot write " + out_path);
        f << j.dump(2) << "\n";
      }
      return kOk;
    }
    if (search_cmd->parsed()) {
      LoadedPlan lp = load_plan(detail::load_json_file(plan_path), ctx);
      json results = json::array();
      bool all_pass = true;
      Int t0 = lp.plan.theta;
      int found = 0;
      while (found < count) {
        if (lp.cover.disc.eval_int(t0) != 0) {
          SpecializationCertificate cert =
              verify_specialization(lp.cover, lp.plan, t0, {}, ctx);
          all_pass = all_pass && cert.all_pass;
          results.push_back(certificate_to_json(cert));
          ++found;
        }
        t0 += lp.plan.modulus;
      }
      json j;
      j["schema_version"] = kSchemaVersion;
      j["input"] = input_to_json(lp.cover, lp.source);
      j["plan"] = plan_to_json(lp.cover, lp.plan);
      j["certificates"] = results;
      detail::emit(out, j);
      return all_pass ? kOk : kCheckFailed;
    }
    if (verify_cmd->parsed()) {
      LoadedPlan lp = load_plan(detail::load_json_file(verify_plan_path), ctx);
      if (!verify_poly.empty()) {
        BiPoly given = parse_poly(verify_poly);
        if (!(given == lp.cover.P()))
          fail(ErrorKind::Usage, "--poly disagrees with the plan file");
      }
      Int t0 = parse_int_str(t0_arg);
      SpecializationCertificate cert =
          verify_specialization(lp.cover, lp.plan, t0, {}, ctx);
      json j;
      j["schema_version"] = kSchemaVersion;
      j["input"] = input_to_json(lp.cover, lp.source);
      j["plan"] = plan_to_json(lp.cover, lp.plan);
      j["certificate"] = certificate_to_json(cert);
      detail::emit(out, j);
      return cert.all_pass ? kOk : kCheckFailed;
    }
    if (bounds_cmd->parsed()) {
      LoadedPlan lp = load_plan(detail::load_json_file(bounds_plan_path), ctx);
      DiscriminantBounds b = discriminant_bounds(lp.cover, lp.plan);
      Int eq5 = Int(b.delta + 1) * lp.plan.modulus;
      json j;
      j["schema_version"] = kSchemaVersion;
      j["input"] = input_to_json(lp.cover, lp.source);
      j["bounds"] = json{{"lower", js(b.lower)},
                         {"lower_applicable", b.lower_applicable},
                         {"upper", js(b.upper)},
                         {"delta", b.delta},
                         {"disc_height", js(b.disc_height)},
                         {"t0_window_bound", js(eq5)}};
      detail::emit(out, j);
      return kOk;
    }
  } catch (const SyntaxError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Usage) {
      err << e.what() << "\n";
      return kUsage;
    }
    json j;
    j["error"] = json{{"type", error_kind_name(e.kind())}, {"message", e.what()}};
    detail::emit(out, j);
    return kComputational;
  } catch (const std::exception& e) {
    // malformed numbers, unreadable JSON, and similar input trouble
    err << e.what() << "\n";
    return kUsage;
  }
  err << "no subcommand\n";
  return kUsage;
}

}  // namespace specforge::cli
