// Plans a progression for Y^3 - Y - T that is inert at 7 and ramified at 11,
// then verifies the first member and prints the certificate verdict.
#include <iostream>

#include "specforge/json_io.hpp"

using namespace specforge;

int main() {
  BiPoly P = parse_poly("Y^3 - Y - T");
  Extension ext = make_extension(P);
  Cover cover = analyze_cover(ext);

  for (const auto& bp : cover.branch_points)
    std::cout << (bp.at_infinity ? "infinity" : bp.minpoly.str())
              << "  inertia " << bp.inertia.str() << "  ["
              << provenance_name(bp.provenance) << "]\n";

  std::vector<UnramifiedCondition> unram{{Int(7), CycleType({3})}};
  std::vector<RamifiedCondition> ram{{Int(11), 0, 1}};
  SpecializationPlan plan = build_plan(cover, unram, ram);
  std::cout << "theta = " << plan.theta << ", modulus = " << plan.modulus
            << ", beta = " << plan.beta << "\n";

  Int t0 = select_t0(cover, plan);
  SpecializationCertificate cert = verify_specialization(cover, plan, t0);
  std::cout << "t0 = " << t0 << ": "
            << (cert.all_pass ? "all checks pass" : "FAILED") << "\n";
  std::cout << certificate_to_json(cert).dump(2) << "\n";
  return cert.all_pass ? 0 : 1;
}
