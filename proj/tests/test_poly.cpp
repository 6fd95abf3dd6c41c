#include "doctest.h"
#include "ordcalc/errors.hpp"
#include "ordcalc/harness.hpp"
#include "ordcalc/poly.hpp"
#include "ordcalc/syntax.hpp"

using namespace ordcalc;
using namespace ordcalc::poly;

namespace {

const Term z = zero();
const Term one = omega_pow(zero());

Cmp both(const Term& a, const Term& b) {
  Comparator ref(EvalMode::Reference);
  const Cmp fast = compare(a, b);
  CHECK(ref.compare(a, b) == fast);
  return fast;
}

std::vector<Term> sorted(std::vector<Term> v) {
  sort_unique(v);
  return v;
}

}  // namespace

TEST_CASE("formal cardinality") {
  CHECK(fc_max(0, flatten_sum(SystemId::Poly, {omega(-1), omega(-2), omega(-2)})) == Card(-1));
  CHECK(fc_max(0, theta(natural_sum(omega(0), omega(-1)))) == Card(0));
  CHECK(fc_max(0, one) == Card::neg_inf());
  CHECK(fc_max(0, theta(omega(0))) == Card::neg_inf());
}

TEST_CASE("shifting") {
  CHECK(shift(omega(-2), 0, 1) == omega(-1));
  CHECK_THROWS_AS(shift(theta(omega(-1)), 0, 1), ShiftError);
  // The bound index 0 under th is outside the threshold -1.
  CHECK(shift(theta(omega(0)), 0, 1) == theta(omega(0)));
  CHECK(shift(omega(-3), 0, 0) == omega(-3));
  CHECK(shift(shift(omega(-3), 0, 2), 0, -2) == omega(-3));
}

TEST_CASE("critical subterms") {
  CHECK(kset(0, theta(natural_sum(omega(0), omega(-1)))).empty());
  CHECK(kset(0, theta(omega(0))) == std::vector<Term>{theta(omega(0))});
  // The collapse lowers its body by one; O^(-2) re-expressed at the root is O^(-1).
  const Term t = natural_sum(theta(natural_sum(omega(0), omega(-2))), omega(-1));
  CHECK(sorted(kset(0, t)) == sorted({theta(natural_sum(omega(0), omega(-1))), omega(0)}));
}

TEST_CASE("ordering") {
  CHECK(both(omega(-2), omega(-1)) == Cmp::Less);
  CHECK(both(theta(z), theta(one)) == Cmp::Less);
  const Term t = theta(natural_sum(omega(0), omega(-1)));
  CHECK(both(t, t) == Cmp::Equal);
  CHECK(both(theta(omega(0)), omega(0)) == Cmp::Less);
}

TEST_CASE("normalization") {
  auto n = normalize(natural_sum(omega(-1), omega(-2)));
  CHECK(n.star == natural_sum(omega(0), omega(-1)));
  CHECK(n.ground == Card(-2));
  CHECK(ground(n.star) == Card(-1));
  auto m = normalize(one);
  CHECK(m.star == one);
  CHECK(m.ground == Card::neg_inf());
  CHECK(ground(theta(omega(0))) == Card::neg_inf());
  CHECK_THROWS_AS(normalize(var("x", 0)), PreconditionError);
}

TEST_CASE("substitution") {
  CHECK(substitutable("x", 0, theta(var("x", -1))));
  CHECK_FALSE(substitutable("x", 0, theta(var("x", 0))));
  CHECK(substitutable("x", 0, omega(0)));
  CHECK(substitute(var("x", 0), "x", 0, one) == one);
  CHECK(substitute(theta(var("x", -1)), "x", 0, omega(0)) == theta(omega(-1)));
  CHECK(substitute(omega(0), "x", 0, omega(-1)) == omega(0));
}

TEST_CASE("dominance") {
  const Term d00 = theta(omega_pow(omega(0)));
  CHECK(dfun(0, z, z) == d00);
  CHECK(dfun(1, z, z) == theta(omega_pow(natural_sum(omega(0), d00))));
  CHECK(dfun(0, omega(-1), z) == theta(natural_sum(omega_pow(omega(0)), omega(-1))));
  CHECK(llrel(z, z, one));
  CHECK_FALSE(llrel(z, one, z));
  // K^{<0}(th O^(0)) = {th O^(0)}, cardinality -inf, bounded by D_0 of the larger term.
  const Term a = theta(omega(0));
  const Term b = natural_sum(a, one);
  CHECK(fc_max(0, dfun(0, z, b)) == Card::neg_inf());
  CHECK(both(a, dfun(0, z, b)) == Cmp::Less);
  CHECK(llrel(z, a, b));
}

TEST_CASE("key lemma instances") {
  auto& cmp = shared_comparator();
  KeyLemmaInstance i;
  i.item = 2;
  i.alpha = z;
  i.beta = one;
  i.delta = z;
  auto o = key_lemma(cmp, i);
  CHECK(o.hypotheses);
  CHECK(o.conclusion);
  CHECK(llrel(z, dfun(0, z, z), dfun(0, z, one)));

  KeyLemmaInstance c;
  c.item = 1;
  c.alpha = omega(-1);
  c.beta = omega(0);
  c.gamma = theta(z);
  CHECK(key_lemma(cmp, c).conclusion);
}

TEST_CASE("membership and drop over a small enumeration") {
  harness::EnumBudget b;
  b.system = SystemId::Poly;
  b.max_size = 5;
  b.min_level = -2;
  const auto ts = harness::enumerate(b);
  CHECK(harness::check_membership(ts).passed());
  CHECK(harness::check_kset_drop(ts).passed());
}
