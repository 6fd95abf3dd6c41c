#pragma once

// The mixed system: countable-below ladder Omega_n, then the polymorphic Xi,
// then an upper ladder Omega_{Omega+n} caught in Xi's level loop. Thresholds
// are large cardinalities (J, m).

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ordcalc/card.hpp"
#include "ordcalc/order_engine.hpp"
#include "ordcalc/term.hpp"

namespace ordcalc::mixed {

/// (0, inf): everything free sits below it.
inline constexpr MCard kTop = MCard::large(0, MCard::kInfinity);

Term zero();
Term omega(int n);
Term omega_high(int level, int n);
Term xi(int level, const Term& arg);
Term theta_low(int n, const Term& body);
Term theta_high(int n, const Term& body);
Term theta_xi(const Term& body);
Term var(std::string name, int level);

MCardSet fc(MCard c, const Term& t);
MCard fc_max(MCard c, const Term& t);

/// t^{<c}_{+d}; c must be large. Throws ShiftError on collision.
Term shift(const Term& t, MCard c, int d);

bool substitutable(std::string_view name, int level, const Term& t);
Term substitute(const Term& t, std::string_view name, int level, const Term& beta);
Term substitute_all(const Term& t, const std::map<std::string, Term, std::less<>>& repl, int level);

struct Abstraction {
  Term body;
  std::vector<std::string> variables;
  std::vector<Term> parameters;
};

/// Xi occurrences at the root's level become variables, as in the xi system.
Abstraction abstract(const Term& t);
Term apply(const Abstraction& a);

struct Critical {
  Term term;
  std::vector<std::string> holes;
  friend bool operator==(const Critical&, const Critical&) = default;
};

std::vector<Term> kset_low(int n, const Term& t);
std::vector<Term> kset_high(MCard c, int n, const Term& t);
std::vector<Critical> kset_xi(MCard c, const Term& t);

class Comparator;

struct CriticalSets {
  std::vector<Term> c;
  std::vector<Term> d;
};

/// C and D for two collapse-headed terms, holes filled with 0.
CriticalSets critical_sets(Comparator& cmp, const Term& a, const Term& b);

class Comparator : public OrderEngine<Comparator> {
 public:
  explicit Comparator(EvalMode mode = EvalMode::Memoized) : OrderEngine(mode) {}

  bool less_sc(const Term& a, const Term& b);
  /// The critical set a cardinal is compared against, holes filled with 0.
  std::vector<Term> own_critical(const Term& collapse);
  std::vector<Critical> k_xi(const Term& body);

 private:
  std::unordered_map<Term, std::vector<Critical>, TermHash> kcache_;
  std::unordered_map<Term, std::vector<Term>, TermHash> owncache_;
};

Comparator& shared_comparator();
Cmp compare(const Term& a, const Term& b);

}  // namespace ordcalc::mixed
