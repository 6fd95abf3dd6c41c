#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ordcalc/term.hpp"

namespace ordcalc {

struct Violation {
  std::string inputs;
  std::string expected;
  std::string got;
};

/// Result of one verification run. Violations empty means pass.
struct CheckReport {
  std::string check;
  SystemId system = SystemId::Buchholz;
  std::size_t checked = 0;
  /// Candidates drawn; for hypothesis sampling this exceeds `checked`.
  std::size_t attempted = 0;
  /// At most kKeptViolations are stored; violation_count has the total.
  std::vector<Violation> violations;
  std::size_t violation_count = 0;
  double elapsed_ms = 0;
  std::uint64_t seed = 0;

  static constexpr std::size_t kKeptViolations = 100;

  bool passed() const { return violation_count == 0; }
  void add_violation(std::string inputs, std::string expected, std::string got);
  void merge(const CheckReport& other);
};

/// Outcome of evaluating one lemma item on one instance.
struct LemmaOutcome {
  bool hypotheses = false;
  bool conclusion = false;
  std::string detail;

  /// The implication itself; vacuous when the hypotheses fail.
  bool holds() const { return !hypotheses || conclusion; }
};

}  // namespace ordcalc
