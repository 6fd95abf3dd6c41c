#include "doctest.h"
#include "ordcalc/buchholz.hpp"
#include "ordcalc/errors.hpp"
#include "ordcalc/harness.hpp"
#include "ordcalc/mixed.hpp"
#include "ordcalc/poly.hpp"
#include "ordcalc/syntax.hpp"
#include "ordcalc/xi.hpp"

using namespace ordcalc;

TEST_CASE("parse builds the expected trees") {
  CHECK(parse(SystemId::Poly, "th(O^(0) # O^(-1))") ==
        poly::theta(natural_sum(poly::omega(0), poly::omega(-1))));
  CHECK(parse(SystemId::Xi, "Xi^(-1)(0)") == xi::xi(-1, xi::zero()));
  CHECK(parse(SystemId::Mixed, "thOO_2(OO_1^(-1) # O_3)") ==
        mixed::theta_high(2, natural_sum(mixed::omega_high(-1, 1), mixed::omega(3))));
  CHECK(parse(SystemId::Buchholz, "  w^( 0 )  ") == omega_pow(buchholz::zero()));
}

TEST_CASE("render is the grammar text") {
  CHECK(render(buchholz::zero()) == "0");
  CHECK(render(poly::theta(poly::omega(0))) == "th(O^(0))");
  CHECK(render(xi::fvar("F", 0, xi::var("w", -1))) == "V.F^(0)(v.w^(-1))");
}

TEST_CASE("variables must sit below their collapse") {
  CHECK_THROWS_AS(parse(SystemId::Buchholz, "th_1(v.x_1)"), ParseError);
  CHECK_NOTHROW(parse(SystemId::Buchholz, "th_2(v.x_1)"));
}

TEST_CASE("parse errors carry spans") {
  try {
    parse(SystemId::Buchholz, "w^(0) # O_");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span().start == 10);
  }
  CHECK_THROWS_AS(parse(SystemId::Poly, "O_1"), ParseError);
  CHECK_THROWS_AS(parse(SystemId::Poly, "O^(1)"), ParseError);
  CHECK_THROWS_AS(parse(SystemId::Xi, "0 0"), ParseError);
  CHECK_THROWS_AS(parse(SystemId::Xi, "th(V.F^(0)(0))"), ParseError);
}

TEST_CASE("round trip over enumerated open and closed terms") {
  for (SystemId s : {SystemId::Buchholz, SystemId::Poly, SystemId::Xi, SystemId::Mixed}) {
    harness::EnumBudget b;
    b.system = s;
    b.max_size = s == SystemId::Mixed ? 5 : 6;
    b.min_level = -2;
    b.max_subscript = 2;
    b.closed_only = false;
    if (s == SystemId::Xi) b.function_variables = {"F"};
    const auto terms = harness::enumerate(b);
    const auto rep = harness::check_round_trip(terms);
    CAPTURE(to_string(s));
    CHECK(rep.checked == terms.size());
    CHECK(rep.passed());
  }
}
