#pragma once

// The stratified system: Omega_n, theta_n, omega-powers, natural sums and
// variables v_n, with K_n critical subterms, formal cardinality, the ordering,
// substitution and the dominance machinery D_{n,gamma} / <<^n_gamma.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordcalc/card.hpp"
#include "ordcalc/order_engine.hpp"
#include "ordcalc/report.hpp"
#include "ordcalc/term.hpp"

namespace ordcalc::buchholz {

Term zero();
Term omega(int n);
Term theta(int n, const Term& body);
Term var(std::string name, int n);

struct Classification {
  bool is_h = false;
  bool is_sc = false;
  bool is_closed = false;
  /// theta_n bodies mention no v_m with m >= n, hereditarily.
  bool is_valid = false;
};

Classification classify(const Term& t);

struct FcResult {
  CardSet set;
  Card max;
};

FcResult fc(const Term& t);
/// Largest variable subscript in t, or 0.
int max_var_subscript(const Term& t);

/// Critical subterms K_n t.
std::vector<Term> kset(int n, const Term& t);

class Comparator : public OrderEngine<Comparator> {
 public:
  explicit Comparator(EvalMode mode = EvalMode::Memoized) : OrderEngine(mode) {}

  bool less_sc(const Term& a, const Term& b);
  /// K_n t, cached in memoized mode.
  std::vector<Term> k(int n, const Term& t);

 private:
  std::map<std::pair<int, StructuralKey>, std::vector<Term>> kcache_;
};

/// Thread-local memoized comparator. Throws PreconditionError on invalid terms.
Cmp compare(const Term& a, const Term& b);
Comparator& shared_comparator();

/// Replace every v_n named `name` by gamma. Requires fc(gamma).max < n.
Term substitute(const Term& t, std::string_view name, int n, const Term& gamma);

/// D_{m,gamma} beta with top level n: D_{n,g} b = th_n(w^(O_n # b) # g) and
/// D_{m,g} b = D_{m,0} D_{m+1,g} b. Requires 1 <= m <= n and fc(gamma).max < n.
Term dfun(int m, int n, const Term& gamma, const Term& beta);

/// How the bound in alpha <<^n_gamma beta reads "D_m beta".
enum class BoundReading { Relativized, Unrelativized };

/// alpha <<^n_gamma beta: alpha < beta and every element of K_m alpha,
/// 1 <= m <= n, lies below D_{m,gamma} beta (or D_{m,0} beta, Unrelativized).
bool llrel(int n, const Term& gamma, const Term& alpha, const Term& beta,
           BoundReading reading = BoundReading::Relativized);
bool llrel(Comparator& cmp, int n, const Term& gamma, const Term& alpha, const Term& beta,
           BoundReading reading = BoundReading::Relativized);

/// One Key Lemma instance. Item 1 uses alpha, beta, gamma, n and the
/// variable; items 2 and 3 use delta for the relativizing term.
struct KeyLemmaInstance {
  int item = 1;
  int n = 1;
  std::string var = "x";
  Term alpha;
  Term beta;
  Term gamma;
  Term delta;
};

LemmaOutcome key_lemma(Comparator& cmp, const KeyLemmaInstance& inst,
                       BoundReading reading = BoundReading::Relativized);

/// Evaluates every instance; violations are instances whose hypotheses hold
/// and whose conclusion fails. `attempted` counts all instances, `checked`
/// those satisfying the hypotheses.
CheckReport check_key_lemma(const std::vector<KeyLemmaInstance>& sample,
                            BoundReading reading = BoundReading::Relativized);

}  // namespace ordcalc::buchholz
