#include "ordcalc/report.hpp"

namespace ordcalc {

void CheckReport::add_violation(std::string inputs, std::string expected, std::string got) {
  ++violation_count;
  if (violations.size() < kKeptViolations) {
    violations.push_back({std::move(inputs), std::move(expected), std::move(got)});
  }
}

void CheckReport::merge(const CheckReport& other) {
  checked += other.checked;
  attempted += other.attempted;
  violation_count += other.violation_count;
  for (const auto& v : other.violations) {
    if (violations.size() >= kKeptViolations) break;
    violations.push_back(v);
  }
  elapsed_ms += other.elapsed_ms;
}

}  // namespace ordcalc
