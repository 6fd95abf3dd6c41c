#include <algorithm>
#include <random>

#include "doctest.h"
#include "ordcalc/buchholz.hpp"
#include "ordcalc/errors.hpp"
#include "ordcalc/harness.hpp"
#include "ordcalc/poly.hpp"
#include "ordcalc/syntax.hpp"
#include "ordcalc/xi.hpp"

using namespace ordcalc;

namespace {
const Term one_b = omega_pow(buchholz::zero());
}

TEST_CASE("flatten_sum canonical forms") {
  const Term z = buchholz::zero();
  CHECK(flatten_sum(SystemId::Buchholz, {}) == z);
  CHECK(flatten_sum(SystemId::Buchholz, {one_b}) == one_b);

  const Term inner = flatten_sum(SystemId::Buchholz, {one_b, buchholz::omega(1)});
  const Term nested = flatten_sum(SystemId::Buchholz, {one_b, inner});
  REQUIRE(nested.is_sum());
  // Hand count: two copies of w^0 and one O_1, no nested sum left.
  CHECK(nested.children().size() == 3);
  CHECK(std::count(nested.children().begin(), nested.children().end(), one_b) == 2);
  CHECK(std::none_of(nested.children().begin(), nested.children().end(), [](const Term& t) { return t.is_sum(); }));

  // Order of components is irrelevant.
  CHECK(flatten_sum(SystemId::Buchholz, {buchholz::omega(1), one_b, one_b}) == nested);
  // Zero components vanish.
  CHECK(flatten_sum(SystemId::Buchholz, {z, one_b, z}) == one_b);
}

TEST_CASE("flatten_sum rejects mixed systems") {
  CHECK_THROWS_AS(flatten_sum(SystemId::Buchholz, {one_b, omega_pow(poly::zero())}), ConstructionError);
}

TEST_CASE("structural keys") {
  CHECK(structural_key(buchholz::zero()) == structural_key(flatten_sum(SystemId::Buchholz, {})));
  CHECK(structural_key(one_b) != structural_key(buchholz::zero()));

  harness::EnumBudget b;
  b.max_size = 5;
  b.max_subscript = 2;
  auto terms = harness::enumerate(b);
  auto shuffled = terms;
  std::mt19937_64 rng(7);
  for (int round = 0; round < 3; ++round) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::sort(shuffled.begin(), shuffled.end(), TermLess{});
    CHECK(shuffled == terms);
  }
}

TEST_CASE("size counts nodes") {
  CHECK(size(buchholz::zero()) == 1);
  CHECK(size(one_b) == 2);
  CHECK(size(flatten_sum(SystemId::Buchholz, {one_b, buchholz::omega(1)})) == 4);
}

TEST_CASE("hash-consing equality is structural") {
  CHECK(buchholz::theta(2, one_b) == buchholz::theta(2, omega_pow(buchholz::zero())));
  CHECK_FALSE(buchholz::theta(2, one_b) == buchholz::theta(1, one_b));
}

TEST_CASE("mentions and variable names") {
  const Term t = xi::theta(natural_sum(xi::var("a", -1), xi::fvar("F", -1, xi::var("b", 0))));
  CHECK(mentions(t, "a"));
  CHECK(mentions(t, "F"));
  CHECK_FALSE(mentions(t, "c"));
  CHECK(variable_names(t) == std::vector<std::string>{"F", "a", "b"});
  CHECK_FALSE(t.closed());
}
