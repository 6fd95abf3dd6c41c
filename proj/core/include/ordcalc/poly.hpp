#pragma once

// The polymorphic system: one cardinal symbol Omega^(J) indexed by
// non-positive de Bruijn-style levels and a single collapse th. Levels are
// relative to the root, so moving under a collapse decrements the threshold.

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ordcalc/card.hpp"
#include "ordcalc/order_engine.hpp"
#include "ordcalc/report.hpp"
#include "ordcalc/term.hpp"

namespace ordcalc::poly {

Term zero();
Term omega(int level);
Term theta(const Term& body);
Term var(std::string name, int level);

/// FC^{<=J}(t) as a set.
CardSet fc(int level, const Term& t);
/// max FC^{<=J}(t), -inf when empty.
Card fc_max(int level, const Term& t);

/// t^{<=J}_{+d}. Throws ShiftError when a shifted index would rise above its
/// threshold.
Term shift(const Term& t, int level, int d);

/// K^{<J} t.
std::vector<Term> kset(int level, const Term& t);

class Comparator : public OrderEngine<Comparator> {
 public:
  explicit Comparator(EvalMode mode = EvalMode::Memoized) : OrderEngine(mode) {}
  bool less_sc(const Term& a, const Term& b);
  /// K^{<0} t, cached in memoized mode.
  std::vector<Term> k0(const Term& t);

 private:
  std::unordered_map<Term, std::vector<Term>, TermHash> kcache_;
};

Comparator& shared_comparator();
Cmp compare(const Term& a, const Term& b);

struct Normalization {
  Term star;
  /// G(t): the least free level of the input.
  Card ground;
  /// -G(star); -inf when star has no free cardinal.
  Card class_index;
  bool member = false;
};

/// Requires a closed term.
Normalization normalize(const Term& t);
Term star(const Term& t);
Card ground(const Term& t);

bool substitutable(std::string_view name, int level, const Term& t);
/// t[v |->^J beta]. Requires substitutable(v, J, t).
Term substitute(const Term& t, std::string_view name, int level, const Term& beta);

/// D_{m,gamma}(beta). Requires fc_max(0, gamma) < 0.
Term dfun(int m, const Term& gamma, const Term& beta);

/// alpha <<_gamma beta.
bool llrel(const Term& gamma, const Term& alpha, const Term& beta);
bool llrel(Comparator& cmp, const Term& gamma, const Term& alpha, const Term& beta);

struct KeyLemmaInstance {
  int item = 1;
  std::string var = "x";
  Term alpha;
  Term beta;
  Term gamma;
  Term delta;
};

LemmaOutcome key_lemma(Comparator& cmp, const KeyLemmaInstance& inst);
CheckReport check_key_lemma(const std::vector<KeyLemmaInstance>& sample);

}  // namespace ordcalc::poly
