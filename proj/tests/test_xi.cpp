#include "doctest.h"
#include "ordcalc/errors.hpp"
#include "ordcalc/harness.hpp"
#include "ordcalc/syntax.hpp"
#include "ordcalc/xi.hpp"

using namespace ordcalc;
using namespace ordcalc::xi;

namespace {

const Term z = zero();
Term X(int level, const Term& arg) { return ordcalc::xi::xi(level, arg); }

Cmp both(const Term& a, const Term& b) {
  Comparator ref(EvalMode::Reference);
  const Cmp fast = compare(a, b);
  CHECK(ref.compare(a, b) == fast);
  return fast;
}

}  // namespace

TEST_CASE("shifting leaves arguments alone") {
  CHECK(shift(X(-1, one()), 0, 1) == X(0, one()));
  // The inner Xi^(0) is at the outer one's level, so below threshold -1 nothing moves.
  const Term nested = X(0, X(0, z));
  CHECK(shift(nested, -1, 1) == nested);
  CHECK(shift(nested, 0, 0) == nested);
  CHECK(shift(X(-2, X(-1, z)), 0, 1) == X(-1, X(-1, z)));
}

TEST_CASE("formal cardinality") {
  CHECK(fc_max(0, X(0, z)) == Card(0));
  CHECK(fc_max(0, theta(X(-1, z))) == Card(0));
  CHECK(fc_max(0, one()) == Card::neg_inf());
  CHECK(fc_max(0, theta(X(0, z))) == Card::neg_inf());
}

TEST_CASE("substitution") {
  const Term b = omega_pow(X(-1, z));
  CHECK(substitute(theta(var("a", -1)), "a", 0, X(0, b)) == theta(X(-1, b)));
  CHECK(substitute(var("a", 0), "a", 0, one()) == one());
  CHECK(substitutable("a", 0, X(0, var("a", 0))));
  CHECK_FALSE(substitutable("a", 0, theta(var("a", 0))));
}

TEST_CASE("canonical abstraction") {
  const Term p = X(0, z);
  auto a = abstract(natural_sum(p, omega_pow(p)));
  REQUIRE(a.parameters == std::vector<Term>{p});
  const Term v = var(a.variables[0], 0);
  CHECK(a.body == natural_sum(v, omega_pow(v)));

  auto b = abstract(theta(X(-1, z)));
  REQUIRE(b.parameters == std::vector<Term>{p});
  CHECK(b.body == theta(var(b.variables[0], -1)));
  CHECK(apply(b) == theta(X(-1, z)));

  auto c = abstract(one());
  CHECK(c.parameters.empty());
  CHECK(c.body == one());
}

TEST_CASE("fine cardinality") {
  CHECK(kappa(natural_sum(X(0, one()), X(0, z))) == one());
  CHECK_FALSE(kappa(one()).has_value());
  CHECK(kappa(X(0, z)) == z);
}

TEST_CASE("critical subterms") {
  auto k = kset(0, theta(X(-1, z)));
  REQUIRE(k.size() == 1);
  REQUIRE(k[0].holes.size() == 1);
  CHECK(k[0].term == theta(var(k[0].holes[0], 0)));

  auto k2 = kset(0, X(-1, z));
  REQUIRE(k2.size() == 1);
  CHECK(k2[0].term == X(0, z));
  CHECK(k2[0].holes.empty());
  CHECK(kset(0, X(0, z)).empty());
}

TEST_CASE("ordering") {
  CHECK(both(X(0, z), X(0, one())) == Cmp::Less);
  CHECK(both(X(-1, one()), X(0, z)) == Cmp::Less);
  CHECK(both(theta(z), theta(one())) == Cmp::Less);
  CHECK(both(theta(X(0, z)), X(0, z)) == Cmp::Less);
}

TEST_CASE("function variables") {
  const Term w = var("w", 0);
  CHECK(fsubstitute(fvar("F", 0, z), "F", 0, omega_pow(w), "w") == one());
  const Term body = natural_sum(w, one());
  CHECK(fsubstitute(X(0, fvar("F", 0, z)), "F", 0, body, "w") == X(0, one()));
  CHECK(fsubstitute(X(0, one()), "F", 0, body, "w") == X(0, one()));
  // V^(0)(a) sits below Xi^(0)(a).
  CHECK(both(fvar("F", 0, z), X(0, z)) == Cmp::Less);
}

TEST_CASE("dominance") {
  const Term d00 = theta(omega_pow(X(0, one())));
  CHECK(dfun(0, z, z) == d00);
  CHECK(dfun(0, var("w", 0), z) == theta(natural_sum(omega_pow(X(0, one())), X(0, z))));
  CHECK(dfun(1, z, z) == dfun(0, z, dfun(0, z, z)));
  CHECK(llrel(z, z, one()));
  CHECK_FALSE(llrel(z, one(), z));
  // K^{<0}(Xi^(-1)(0)) = {Xi^(0)(0)}; D_0 carries Xi^(0)(1) in its argument,
  // which already bounds that element.
  const Term a = X(-1, z);
  const auto ks = shared_comparator().k0(a);
  REQUIRE(ks.size() == 1);
  CHECK(ks[0].term == X(0, z));
  CHECK(both(X(0, z), dfun(0, z, natural_sum(a, one()))) == Cmp::Less);
  CHECK(llrel(z, a, natural_sum(a, one())));
  // Swapped arguments fail the order premise.
  CHECK_FALSE(llrel(z, natural_sum(a, one()), a));
}

TEST_CASE("key lemma instances") {
  auto& cmp = shared_comparator();
  KeyLemmaInstance i;
  i.item = 3;
  i.alpha = z;
  i.beta = one();
  i.delta = z;
  auto o = key_lemma(cmp, i);
  CHECK(o.hypotheses);
  CHECK(o.conclusion);

  KeyLemmaInstance c;
  c.item = 1;
  c.alpha = X(-1, z);
  c.beta = X(0, z);
  c.gamma = omega_pow(var("x", 0));
  CHECK(key_lemma(cmp, c).conclusion);
}

TEST_CASE("hole policies agree away from Xi-versus-collapse clauses") {
  Comparator self(EvalMode::Memoized, HolePolicy::Self);
  CHECK(self.compare(theta(z), theta(one())) == Cmp::Less);
  CHECK(self.compare(X(0, z), X(0, one())) == Cmp::Less);
  CHECK(self.policy() == HolePolicy::Self);
}

TEST_CASE("abstraction identity over a small enumeration") {
  harness::EnumBudget b;
  b.system = SystemId::Xi;
  b.max_size = 5;
  b.min_level = -2;
  CHECK(harness::check_abstraction(harness::enumerate(b)).passed());
}
