#pragma once

// Verification harness: exhaustive enumeration, order-axiom checks, Key Lemma
// sampling, known-value fixtures and the per-system structural properties.
// Every check returns a CheckReport; reports serialize to one JSON line each.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ordcalc/order_engine.hpp"
#include "ordcalc/report.hpp"
#include "ordcalc/term.hpp"

namespace ordcalc::harness {

struct EnumBudget {
  SystemId system = SystemId::Buchholz;
  /// Bound on the enumeration weight: node count, except that cardinal and
  /// variable leaves weigh 2.
  std::size_t max_size = 4;
  /// Lowest level for poly, xi and mixed leaves.
  int min_level = -1;
  /// Largest subscript for Omega_n, th_n and the mixed ladders.
  int max_subscript = 1;
  bool closed_only = true;
  /// Variable names offered when closed_only is false; function variables
  /// (xi only) get capitalised names.
  std::vector<std::string> variables = {"x"};
  std::vector<std::string> function_variables = {};
  /// Hard cap on the number of terms produced.
  std::size_t cap = 5'000'000;
};

std::size_t enumeration_weight(const Term& t);
/// Every canonical, grammatical term within the budget, once each, in
/// structural order.
std::vector<Term> enumerate(const EnumBudget& budget);

/// Comparison through the system's shared memoized comparator, or through a
/// fresh stateless one in Reference mode.
Cmp compare(SystemId system, const Term& a, const Term& b, EvalMode mode = EvalMode::Memoized);
bool less(SystemId system, const Term& a, const Term& b);
void clear_caches();

struct AxiomOptions {
  /// Above this many terms, pairs are sampled instead of exhausted.
  std::size_t all_pairs_limit = 10000;
  std::size_t sampled_pairs = 3'000'000;
  std::size_t triples = 100'000;
  std::uint64_t seed = 1;
};

/// Irreflexivity, totality, antisymmetry, transitivity and sort consistency.
CheckReport check_order_axioms(SystemId system, const std::vector<Term>& terms,
                               const AxiomOptions& options);

struct LemmaOptions {
  std::size_t per_item = 10'000;
  /// Give up after this many draws per requested instance.
  std::size_t max_draw_factor = 10;
  std::uint64_t seed = 1;
};

/// One report per Key Lemma item of the system; check name "key_lemma.<item>".
/// A report carries a "starvation" violation when fewer than 10% of draws
/// satisfied the hypotheses or fewer than per_item instances were checked.
std::vector<CheckReport> check_key_lemmas(SystemId system, const LemmaOptions& options);

/// Known values: ladder facts, FC and K examples, cardinal arithmetic.
CheckReport check_fixtures();

/// Over all pairs with FC(a) < FC(b): a < b (stratified system).
CheckReport check_fc_monotonicity(const std::vector<Term>& terms);
/// Every element of K^{<0}(a*) has cardinality below a*'s once read in a*'s
/// frame (polymorphic system). `literal` skips the frame change.
CheckReport check_kset_drop(const std::vector<Term>& terms, bool literal = false);
/// Every closed term is a member at its class (polymorphic system).
CheckReport check_membership(const std::vector<Term>& terms);
/// apply(abstract(t)) == t (function-sorted system).
CheckReport check_abstraction(const std::vector<Term>& terms);
/// parse(render(t)) == t.
CheckReport check_round_trip(const std::vector<Term>& terms);
/// Memoized and reference comparators agree on random pairs.
CheckReport check_oracle(SystemId system, const std::vector<Term>& terms, std::size_t pairs,
                         std::uint64_t seed);

/// Budgets of the acceptance criteria. Defaults are the documented ones.
struct AcceptanceBudget {
  std::uint64_t seed = 1;
  std::size_t max_size = 6;
  int min_level = -3;
  int buchholz_subscript = 3;
  int mixed_subscript = 2;
  /// Frozen Buchholz enumeration size at the default budget; 0 skips the pin.
  std::size_t buchholz_count = 2724;
  AxiomOptions axioms;
  LemmaOptions lemmas;
  std::size_t oracle_pairs = 100'000;
  /// Criterion ids 1..10 to run; empty runs all.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckReport> reports;
  double seconds = 0;
  /// Runtime ceiling; 0 means none. With per_report set, each report's
  /// elapsed_ms is held to it instead of the criterion total.
  double limit_seconds = 0;
  bool per_report = false;
  bool within_time() const;
  bool passed() const;
};

/// Runs the ten acceptance criteria in order, calling `on_result` after each.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceBudget& budget, const std::function<void(const CriterionResult&)>& on_result = {});

/// {check, system, checked, attempted, violations[], seed, elapsed_ms}.
std::string to_json_line(const CheckReport& report);
/// Same record without elapsed_ms, for determinism comparisons.
std::string to_json_line_stable(const CheckReport& report);

}  // namespace ordcalc::harness
