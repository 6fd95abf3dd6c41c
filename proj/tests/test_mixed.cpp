#include "doctest.h"
#include "ordcalc/card.hpp"
#include "ordcalc/errors.hpp"
#include "ordcalc/mixed.hpp"
#include "ordcalc/syntax.hpp"

using namespace ordcalc;
using namespace ordcalc::mixed;

namespace {

const Term z = zero();
const Term one = omega_pow(zero());
constexpr int inf = MCard::kInfinity;

Cmp both(const Term& a, const Term& b) {
  Comparator ref(EvalMode::Reference);
  const Cmp fast = compare(a, b);
  CHECK(ref.compare(a, b) == fast);
  return fast;
}

}  // namespace

TEST_CASE("cardinal arithmetic") {
  CHECK(card_minus(MCard::large(-1, 2), -1) == MCard::large(0, inf));
  CHECK(card_min(MCard::large(0, 3), 1) == MCard::large(0, 1));
  CHECK(MCard::large(-1, inf) < MCard::large(0, 0));
  CHECK(MCard::low(7) < MCard::large(-5, 0));
  CHECK(MCard::neg_inf() < MCard::low(1));
  CHECK(level_minus(-1, MCard::large(-3, 2)) == 2);
}

TEST_CASE("shifting") {
  CHECK(shift(omega_high(-1, 2), kTop, 1) == omega_high(0, 2));
  CHECK(shift(omega(3), kTop, 1) == omega(3));
  // Under thOO_1 the threshold is min{(0,inf),1} = (0,1); (0,2) is above it.
  const Term t = theta_high(1, omega_high(0, 2));
  CHECK(shift(t, kTop, 1) == t);
}

TEST_CASE("formal cardinality") {
  CHECK(fc(kTop, omega_high(-1, 2)).values == std::vector<MCard>{MCard::large(-1, 2)});
  CHECK(fc(kTop, omega(3)).values == std::vector<MCard>{MCard::low(3)});
  CHECK(fc(kTop, z).values.empty());
  CHECK(fc_max(kTop, z) == MCard::neg_inf());
}

TEST_CASE("substitution") {
  CHECK(substitute(var("x", 0), "x", 0, omega(1)) == omega(1));
  CHECK(substitute(omega_high(-1, 2), "x", 0, one) == omega_high(-1, 2));
  CHECK(substitute(theta_xi(var("x", -1)), "x", 0, xi(0, z)) == theta_xi(xi(-1, z)));
}

TEST_CASE("critical subterms") {
  CHECK(kset_low(2, omega(1)) == std::vector<Term>{omega(1)});
  CHECK(kset_low(1, xi(0, z)).empty());
  CHECK(kset_high(MCard::large(0, 1), 1, omega_high(-1, 1)) == std::vector<Term>{omega_high(-1, 1)});
}

TEST_CASE("critical sets") {
  auto& cmp = shared_comparator();
  auto cs = critical_sets(cmp, theta_low(1, z), theta_low(1, one));
  CHECK(cs.c.empty());
  auto ds = critical_sets(cmp, theta_xi(z), theta_xi(one));
  CHECK(ds.d.empty());
}

TEST_CASE("ladder order") {
  CHECK(both(omega(5), omega_high(0, 1)) == Cmp::Less);
  CHECK(both(omega_high(-1, 2), xi(0, z)) == Cmp::Less);
  CHECK(both(xi(0, z), omega_high(0, 1)) == Cmp::Less);
  CHECK(both(omega(1), omega(2)) == Cmp::Less);
  CHECK(both(omega_high(0, 1), omega_high(0, 2)) == Cmp::Less);
  CHECK(both(theta_low(1, omega(4)), omega(1)) == Cmp::Less);
}

TEST_CASE("abstraction round trip") {
  const Term t = natural_sum(xi(0, z), theta_xi(xi(-1, z)));
  CHECK(apply(abstract(t)) == t);
}
