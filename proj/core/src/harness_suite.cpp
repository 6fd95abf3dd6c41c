#include <algorithm>
#include <chrono>

#include "ordcalc/harness.hpp"

namespace ordcalc::harness {

bool CriterionResult::within_time() const {
  if (limit_seconds <= 0) return true;
  if (!per_report) return seconds < limit_seconds;
  return std::all_of(reports.begin(), reports.end(),
                     [&](const CheckReport& r) { return r.elapsed_ms < limit_seconds * 1000.0; });
}

bool CriterionResult::passed() const {
  return within_time() &&
         std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed(); });
}

namespace {

class Suite {
 public:
  explicit Suite(const AcceptanceBudget& b) : b_(b) {
    axioms_ = b.axioms;
    axioms_.seed = b.seed;
    lemmas_ = b.lemmas;
    lemmas_.seed = b.seed;
  }

  const std::vector<Term>& terms(SystemId s) {
    auto& slot = terms_[static_cast<int>(s)];
    if (!slot.loaded) {
      EnumBudget e;
      e.system = s;
      e.max_size = b_.max_size;
      e.min_level = b_.min_level;
      e.max_subscript = s == SystemId::Buchholz ? b_.buchholz_subscript
                        : s == SystemId::Mixed  ? b_.mixed_subscript
                                                : 1;
      slot.terms = enumerate(e);
      slot.loaded = true;
    }
    return slot.terms;
  }

  std::vector<CheckReport> run(int id) {
    switch (id) {
      case 1:
        return {check_fixtures()};
      case 2: {
        std::vector<CheckReport> out;
        const auto& ts = terms(SystemId::Buchholz);
        if (b_.buchholz_count != 0) {
          CheckReport pin;
          pin.check = "enumeration_count";
          pin.system = SystemId::Buchholz;
          pin.checked = pin.attempted = 1;
          if (ts.size() != b_.buchholz_count) {
            pin.add_violation("closed terms", std::to_string(b_.buchholz_count), std::to_string(ts.size()));
          }
          out.push_back(pin);
        }
        out.push_back(check_order_axioms(SystemId::Buchholz, ts, axioms_));
        return out;
      }
      case 3: {
        std::vector<CheckReport> out;
        for (SystemId s : {SystemId::Poly, SystemId::Xi, SystemId::Mixed}) {
          // The per-system clock includes enumeration.
          const auto start = std::chrono::steady_clock::now();
          const auto& ts = terms(s);
          out.push_back(check_order_axioms(s, ts, axioms_));
          out.back().elapsed_ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
          clear_caches();
        }
        return out;
      }
      case 4:
        return {check_fc_monotonicity(terms(SystemId::Buchholz))};
      case 5:
        return {check_kset_drop(terms(SystemId::Poly))};
      case 6: {
        std::vector<CheckReport> out;
        for (SystemId s : {SystemId::Buchholz, SystemId::Poly, SystemId::Xi}) {
          for (auto& r : check_key_lemmas(s, lemmas_)) out.push_back(std::move(r));
          clear_caches();
        }
        return out;
      }
      case 7:
        return {check_membership(terms(SystemId::Poly))};
      case 8:
        return {check_abstraction(terms(SystemId::Xi))};
      case 9: {
        std::vector<CheckReport> out;
        for (SystemId s : {SystemId::Buchholz, SystemId::Poly, SystemId::Xi, SystemId::Mixed}) {
          out.push_back(check_round_trip(terms(s)));
        }
        return out;
      }
      case 10: {
        std::vector<CheckReport> out;
        for (SystemId s : {SystemId::Buchholz, SystemId::Poly, SystemId::Xi, SystemId::Mixed}) {
          out.push_back(check_oracle(s, terms(s), b_.oracle_pairs, b_.seed));
          clear_caches();
        }
        return out;
      }
      default:
        return {};
    }
  }

 private:
  struct Slot {
    bool loaded = false;
    std::vector<Term> terms;
  };
  const AcceptanceBudget& b_;
  AxiomOptions axioms_;
  LemmaOptions lemmas_;
  Slot terms_[4];
};

// Seconds; 0 where no ceiling is stated.
constexpr double kLimits[] = {0, 1, 120, 120, 0, 0, 300, 0, 0, 0, 0};

constexpr const char* kTitles[] = {
    "",
    "fixture suite",
    "order axioms, buchholz",
    "order axioms, poly / xi / mixed",
    "fc monotonicity",
    "k-set cardinality drop",
    "key lemma suites",
    "membership surrogate",
    "abstract/apply identity",
    "parser round trip",
    "oracle equivalence",
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceBudget& budget,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  Suite suite(budget);
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 10; ++id) {
    if (!budget.only.empty() && std::find(budget.only.begin(), budget.only.end(), id) == budget.only.end()) {
      continue;
    }
    CriterionResult r;
    r.id = id;
    r.title = kTitles[id];
    r.limit_seconds = kLimits[id];
    r.per_report = id == 3;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.reports = suite.run(id);
    } catch (const Error& e) {
      CheckReport failed;
      failed.check = "criterion_" + std::to_string(id);
      failed.add_violation("setup", "no error", e.what());
      r.reports.push_back(failed);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ordcalc::harness
