#pragma once

// The function-sorted system: cardinals Xi^(J)(a) that take an argument,
// a single collapse th, ordinary variables v^(J) and function variables
// V^(J)(a). Critical subterms of a collapse may be functions: the bound
// Xi^(0) applications are abstracted into distinguished variables (holes).

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ordcalc/card.hpp"
#include "ordcalc/order_engine.hpp"
#include "ordcalc/report.hpp"
#include "ordcalc/term.hpp"

namespace ordcalc::xi {

Term zero();
Term one();
Term xi(int level, const Term& arg);
Term theta(const Term& body);
Term var(std::string name, int level);
Term fvar(std::string name, int level, const Term& arg);

CardSet fc(int level, const Term& t);
Card fc_max(int level, const Term& t);

/// t^{<=J}_{+d}. Throws ShiftError on collision.
Term shift(const Term& t, int level, int d);

bool substitutable(std::string_view name, int level, const Term& t);
/// t[v |->^J beta]. Requires substitutable.
Term substitute(const Term& t, std::string_view name, int level, const Term& beta);
/// Simultaneous t[v1 |->^J b1, ...] without the substitutability check.
Term substitute_all(const Term& t, const std::map<std::string, Term, std::less<>>& repl, int level);

/// Function variable substitution t[V |->^J body(w)].
bool fsubstitutable(std::string_view fname, int level, const Term& t);
Term fsubstitute(const Term& t, std::string_view fname, int level, const Term& body,
                 std::string_view w);

struct Abstraction {
  Term body;
  std::vector<std::string> variables;
  /// parameters[i] replaces variables[i]; each is Xi^(0)(.).
  std::vector<Term> parameters;
};

/// Canonical abstraction: every Xi occurrence sitting exactly at the root's
/// level (Xi^(-d) under d collapses) becomes a variable; equal parameters
/// share one. Fresh names avoid every name already in t.
Abstraction abstract(const Term& t);
/// Substitutes the parameters back; apply(abstract(t)) == t.
Term apply(const Abstraction& a);

/// Fine cardinality: nullopt for -inf, else the largest parameter argument.
/// Requires fc_max(0, t) in {-inf, 0}.
std::optional<Term> kappa(const Term& t);

/// An element of K^{<J}: a term together with its distinguished variables.
struct Critical {
  Term term;
  std::vector<std::string> holes;
  friend bool operator==(const Critical&, const Critical&) = default;
};

std::vector<Critical> kset(int level, const Term& t);

/// What fills a critical function's holes when a Xi cardinal meets a
/// collapse. Zero is the literal reading; Self uses the cardinal itself.
enum class HolePolicy { Zero, Self };

/// Between two collapses holes are always read at 0: any value below the
/// collapse gives the same answer, and the parameters of the other side live
/// one frame too low to stand in.
class Comparator : public OrderEngine<Comparator> {
 public:
  explicit Comparator(EvalMode mode = EvalMode::Memoized, HolePolicy policy = HolePolicy::Zero)
      : OrderEngine(mode), policy_(policy) {}

  bool less_sc(const Term& a, const Term& b);
  std::vector<Critical> k0(const Term& t);
  HolePolicy policy() const { return policy_; }

 private:
  /// K^{<0} of a collapse argument with every hole filled by 0.
  const std::vector<Term>& k0_closed(const Term& t);

  /// K^{<0} of a collapse argument filled for comparison against `xi`.
  std::vector<Term> against_xi(const Term& arg, const Term& xi);

  HolePolicy policy_;
  std::unordered_map<Term, std::vector<Critical>, TermHash> kcache_;
  std::unordered_map<Term, std::vector<Term>, TermHash> kclosed_;
  std::vector<Term> scratch_;
};

Comparator& shared_comparator();
Cmp compare(const Term& a, const Term& b);

/// D_{m,gamma}(beta); gamma is read as a function of the variable w.
Term dfun(int m, const Term& gamma, const Term& beta, std::string_view w = "w");

bool llrel(const Term& gamma, const Term& alpha, const Term& beta, std::string_view w = "w");
bool llrel(Comparator& cmp, const Term& gamma, const Term& alpha, const Term& beta,
           std::string_view w = "w");

struct KeyLemmaInstance {
  int item = 1;
  std::string var = "x";    // ordinary variable v
  std::string fvar = "F";   // function variable V
  std::string w = "w";      // distinguished variable of gamma (item 2) or alpha (item 4)
  Term alpha;
  Term beta;
  Term gamma;
  Term delta;
};

LemmaOutcome key_lemma(Comparator& cmp, const KeyLemmaInstance& inst);
CheckReport check_key_lemma(const std::vector<KeyLemmaInstance>& sample);

}  // namespace ordcalc::xi
