// Runs the ten acceptance criteria at their documented budgets and prints
// one PASS/FAIL line per criterion. Exit status is nonzero when any fails.

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "ordcalc/harness.hpp"

int main() {
  using namespace ordcalc;
  harness::AcceptanceBudget budget;
  if (const char* env = std::getenv("ORDCALC_SEED")) budget.seed = std::strtoull(env, nullptr, 10);
  bool ok = true;
  harness::run_acceptance(budget, [&](const harness::CriterionResult& r) {
    ok = ok && r.passed();
    std::printf("%s criterion %d: %s (%.1f s)\n", r.passed() ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
    if (!r.within_time()) std::printf("    over the %.0f s runtime limit\n", r.limit_seconds);
    for (const auto& rep : r.reports) {
      std::printf("    %-18s %-8s checked %zu attempted %zu violations %zu (%.1f s)\n", rep.check.c_str(),
                  std::string(to_string(rep.system)).c_str(), rep.checked, rep.attempted, rep.violation_count,
                  rep.elapsed_ms / 1000.0);
      for (std::size_t i = 0; i < rep.violations.size() && i < 3; ++i) {
        std::printf("      %s -> expected %s, got %s\n", rep.violations[i].inputs.c_str(),
                    rep.violations[i].expected.c_str(), rep.violations[i].got.c_str());
      }
    }
    std::fflush(stdout);
  });
  return ok ? 0 : 1;
}
