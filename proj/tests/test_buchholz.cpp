#include "doctest.h"
#include "ordcalc/buchholz.hpp"
#include "ordcalc/errors.hpp"
#include "ordcalc/syntax.hpp"

using namespace ordcalc;
using namespace ordcalc::buchholz;

namespace {

Term P(const char* s) { return parse(SystemId::Buchholz, s); }
const Term z = zero();
const Term one = omega_pow(zero());

// Both comparator modes must give the same answer.
Cmp both(const Term& a, const Term& b) {
  Comparator ref(EvalMode::Reference);
  const Cmp fast = compare(a, b);
  CHECK(ref.compare(a, b) == fast);
  return fast;
}

}  // namespace

TEST_CASE("classify") {
  auto c = classify(one);
  CHECK(c.is_h);
  CHECK_FALSE(c.is_sc);
  CHECK(classify(omega(1)).is_sc);
  CHECK_FALSE(classify(theta(1, var("x", 1))).is_valid);
  CHECK(classify(theta(2, var("x", 1))).is_valid);
  CHECK_FALSE(classify(natural_sum(one, one)).is_h);
}

TEST_CASE("formal cardinality") {
  CHECK(fc(z).max == Card::neg_inf());
  // The collapse removes every class >= 2, and O_2 had only class 2.
  CHECK(fc(theta(2, omega(2))).max == Card::neg_inf());
  // theta_2 keeps the class 1 of its body.
  CHECK(fc(theta(2, omega(1))).max == Card(1));
  CHECK(fc(natural_sum(omega(1), omega(3))).set.values == std::vector<Card>{Card(1), Card(3)});
}

TEST_CASE("critical subterms") {
  // theta_1 O_1 has class 1 <= 2, so it is its own critical subterm.
  CHECK(kset(2, theta(1, omega(1))) == std::vector<Term>{theta(1, omega(1))});
  // theta_2 has class above 1: look inside, where O_1 is not below 1.
  CHECK(kset(1, theta(2, omega(1))).empty());
  CHECK(kset(1, z).empty());
  CHECK(kset(2, omega(1)) == std::vector<Term>{omega(1)});
}

TEST_CASE("ordering") {
  CHECK(both(z, one) == Cmp::Less);
  CHECK(both(z, z) == Cmp::Equal);
  // 0 < O_1 and K_1(0) is empty.
  CHECK(both(theta(1, z), theta(1, omega(1))) == Cmp::Less);
  // theta_1 anything stays below O_1.
  CHECK(both(theta(1, omega(3)), omega(1)) == Cmp::Less);
  // K_2(0) is empty, so no witness lifts theta_2(0) past O_1.
  CHECK(both(theta(2, z), omega(1)) == Cmp::Less);
  CHECK(both(omega(1), theta(2, omega(1))) == Cmp::Less);
  CHECK(both(natural_sum(one, one), omega_pow(one)) == Cmp::Less);
}

TEST_CASE("substitution") {
  CHECK(substitute(omega_pow(var("x", 1)), "x", 1, one) == omega_pow(one));
  CHECK(substitute(natural_sum(var("x", 1), omega(1)), "x", 1, z) == omega(1));
  CHECK_THROWS_AS(substitute(theta(2, var("x", 1)), "x", 1, omega(1)), PreconditionError);
}

TEST_CASE("dominance function") {
  CHECK(dfun(2, 2, z, z) == theta(2, omega_pow(omega(2))));
  CHECK(dfun(1, 2, z, z) == theta(1, omega_pow(natural_sum(omega(1), theta(2, omega_pow(omega(2)))))));
  CHECK(dfun(2, 2, omega(1), z) == theta(2, natural_sum(omega_pow(omega(2)), omega(1))));
  CHECK_THROWS_AS(dfun(3, 2, z, z), PreconditionError);
}

TEST_CASE("dominance relation") {
  CHECK(llrel(0, z, z, one));
  CHECK_FALSE(llrel(1, z, omega(1), omega(1)));
  // theta_1 0 is not below 2 at all.
  const Term two = natural_sum(one, one);
  CHECK_FALSE(llrel(1, z, theta(1, z), two));
  // Against O_1 it is below, and its only critical subterm is itself,
  // which sits below D_{1,0}(O_1) = theta_1(w^(O_1 # O_1)).
  CHECK(both(theta(1, z), dfun(1, 1, z, omega(1))) == Cmp::Less);
  CHECK(llrel(1, z, theta(1, z), omega(1)));
}

TEST_CASE("key lemma instances") {
  auto& cmp = shared_comparator();
  KeyLemmaInstance i;
  i.item = 1;
  i.n = 2;
  i.alpha = omega_pow(var("x", 1));
  // x is an epsilon number, so w^(w^x) would collapse back to w^x.
  i.beta = omega_pow(natural_sum(var("x", 1), one));
  i.gamma = omega(1);
  auto o = key_lemma(cmp, i);
  CHECK(o.hypotheses);
  CHECK(o.conclusion);

  // 0 is not strongly critical, so it may not stand for a variable.
  i.gamma = z;
  CHECK_FALSE(key_lemma(cmp, i).hypotheses);

  // Closed terms: substitution changes nothing and the implication holds.
  KeyLemmaInstance c;
  c.item = 1;
  c.n = 1;
  c.alpha = z;
  c.beta = one;
  c.gamma = z;
  CHECK(key_lemma(cmp, c).holds());
  c.gamma = theta(1, z);
  o = key_lemma(cmp, c);
  CHECK(o.hypotheses);
  CHECK(o.conclusion);

  KeyLemmaInstance j;
  j.item = 2;
  j.n = 1;
  j.alpha = z;
  j.beta = one;
  j.delta = z;
  j.gamma = z;
  o = key_lemma(cmp, j);
  CHECK(o.hypotheses);
  CHECK(o.conclusion);
  // Direct evaluation of the conclusion.
  CHECK(llrel(0, z, dfun(1, 1, z, z), dfun(1, 1, z, one)));
}
