#include <set>

#include "doctest.h"
#include "ordcalc/buchholz.hpp"
#include "ordcalc/harness.hpp"
#include "ordcalc/mixed.hpp"
#include "ordcalc/poly.hpp"
#include "ordcalc/syntax.hpp"
#include "ordcalc/xi.hpp"

using namespace ordcalc;
using namespace ordcalc::harness;

namespace {

std::size_t weight(const Term& t) {
  if (t.children().empty()) return t.is_zero() ? 1 : 2;
  std::size_t w = 1;
  for (const auto& c : t.children()) w += weight(c);
  return w;
}

// Closure of the leaves under every constructor, cut at the weight bound.
std::set<std::string> brute_force(SystemId s, std::size_t max, int lo, int subs) {
  std::vector<Term> seed{zero(s)};
  std::vector<std::function<Term(const Term&)>> unary{[](const Term& a) { return omega_pow(a); }};
  switch (s) {
    case SystemId::Buchholz:
      for (int n = 1; n <= subs; ++n) {
        seed.push_back(buchholz::omega(n));
        unary.push_back([n](const Term& a) { return buchholz::theta(n, a); });
      }
      break;
    case SystemId::Poly:
      for (int j = lo; j <= 0; ++j) seed.push_back(poly::omega(j));
      unary.push_back([](const Term& a) { return poly::theta(a); });
      break;
    case SystemId::Xi:
      unary.push_back([](const Term& a) { return xi::theta(a); });
      for (int j = lo; j <= 0; ++j) unary.push_back([j](const Term& a) { return xi::xi(j, a); });
      break;
    case SystemId::Mixed:
      for (int n = 1; n <= subs; ++n) {
        seed.push_back(mixed::omega(n));
        for (int j = lo; j <= 0; ++j) seed.push_back(mixed::omega_high(j, n));
        unary.push_back([n](const Term& a) { return mixed::theta_low(n, a); });
        unary.push_back([n](const Term& a) { return mixed::theta_high(n, a); });
      }
      unary.push_back([](const Term& a) { return mixed::theta_xi(a); });
      for (int j = lo; j <= 0; ++j) unary.push_back([j](const Term& a) { return mixed::xi(j, a); });
      break;
  }
  std::set<std::string> seen;
  std::vector<Term> all;
  auto add = [&](const Term& t) {
    if (weight(t) > max || !grammar_violation(t).empty()) return false;
    return seen.insert(render(t)).second ? (all.push_back(t), true) : false;
  };
  for (const auto& t : seed) add(t);
  for (bool grew = true; grew;) {
    grew = false;
    const auto snapshot = all;
    for (const auto& a : snapshot) {
      for (const auto& f : unary) grew |= add(f(a));
      for (const auto& b : snapshot) {
        if (!a.is_zero() && !b.is_zero()) grew |= add(natural_sum(a, b));
      }
    }
  }
  return seen;
}

std::set<std::string> rendered(const std::vector<Term>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(render(t));
  return out;
}

}  // namespace

TEST_CASE("enumeration examples") {
  EnumBudget b;
  b.max_size = 2;
  b.max_subscript = 1;
  CHECK(rendered(enumerate(b)) == std::set<std::string>{"0", "w^(0)", "O_1", "th_1(0)"});
  EnumBudget p;
  p.system = SystemId::Poly;
  p.max_size = 1;
  CHECK(rendered(enumerate(p)) == std::set<std::string>{"0"});
}

TEST_CASE("enumeration matches a brute-force closure") {
  struct Case {
    SystemId s;
    std::size_t max;
    int lo;
    int subs;
  };
  for (const Case c : {Case{SystemId::Buchholz, 5, 0, 2}, Case{SystemId::Poly, 5, -2, 1},
                       Case{SystemId::Xi, 5, -2, 1}, Case{SystemId::Mixed, 4, -1, 2}}) {
    EnumBudget b;
    b.system = c.s;
    b.max_size = c.max;
    b.min_level = c.lo;
    b.max_subscript = c.subs;
    const auto ts = enumerate(b);
    CAPTURE(to_string(c.s));
    CHECK(rendered(ts).size() == ts.size());
    CHECK(rendered(ts) == brute_force(c.s, c.max, c.lo, c.subs));
    for (const auto& t : ts) CHECK(enumeration_weight(t) == weight(t));
  }
}

TEST_CASE("enumeration is deterministic") {
  EnumBudget b;
  b.system = SystemId::Xi;
  b.max_size = 5;
  b.min_level = -2;
  CHECK(enumerate(b) == enumerate(b));
}

TEST_CASE("frozen enumeration counts") {
  // Default acceptance budgets.
  const std::pair<SystemId, std::size_t> counts[] = {
      {SystemId::Buchholz, 2724}, {SystemId::Poly, 322}, {SystemId::Xi, 9694}};
  for (const auto& [s, n] : counts) {
    EnumBudget b;
    b.system = s;
    b.max_size = 6;
    b.min_level = -3;
    b.max_subscript = s == SystemId::Buchholz ? 3 : 1;
    CAPTURE(to_string(s));
    CHECK(enumerate(b).size() == n);
  }
}

TEST_CASE("order axioms on small sets") {
  for (SystemId s : {SystemId::Buchholz, SystemId::Poly, SystemId::Xi, SystemId::Mixed}) {
    EnumBudget b;
    b.system = s;
    b.max_size = 5;
    b.min_level = -2;
    b.max_subscript = 2;
    AxiomOptions o;
    o.triples = 20'000;
    CAPTURE(to_string(s));
    CHECK(check_order_axioms(s, enumerate(b), o).passed());
  }
}

TEST_CASE("duplicates are equal only to themselves") {
  const Term a = buchholz::omega(1);
  const Term b = omega_pow(buchholz::zero());
  CHECK(check_order_axioms(SystemId::Buchholz, {a, b, a}, AxiomOptions{}).passed());
  CHECK(compare(SystemId::Buchholz, a, a) == Cmp::Equal);
  CHECK(compare(SystemId::Buchholz, a, b) != Cmp::Equal);
}

TEST_CASE("fixtures") {
  const auto rep = check_fixtures();
  CHECK(rep.checked >= 18);
  CHECK(rep.passed());
}

TEST_CASE("reports serialise deterministically") {
  LemmaOptions o;
  o.per_item = 300;
  const auto a = check_key_lemmas(SystemId::Poly, o);
  clear_caches();
  const auto b = check_key_lemmas(SystemId::Poly, o);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(to_json_line_stable(a[i]) == to_json_line_stable(b[i]));
  CHECK(to_json_line(a[0]).find("\"elapsed_ms\"") != std::string::npos);
  CHECK(to_json_line_stable(a[0]).find("\"elapsed_ms\"") == std::string::npos);
}

TEST_CASE("starvation is reported") {
  LemmaOptions o;
  o.per_item = 200;
  o.max_draw_factor = 1;
  bool starved = false;
  for (const auto& r : check_key_lemmas(SystemId::Buchholz, o)) {
    for (const auto& v : r.violations) starved |= v.inputs == "starvation";
  }
  CHECK(starved);
}

TEST_CASE("oracle agreement on small sets") {
  for (SystemId s : {SystemId::Buchholz, SystemId::Poly, SystemId::Xi, SystemId::Mixed}) {
    EnumBudget b;
    b.system = s;
    b.max_size = 5;
    b.min_level = -2;
    b.max_subscript = 2;
    CHECK(check_oracle(s, enumerate(b), 5'000, 3).passed());
  }
}

TEST_CASE("criterion runtime ceilings") {
  CriterionResult r;
  r.reports.push_back(CheckReport{});
  r.seconds = 5;
  CHECK(r.passed());
  r.limit_seconds = 1;
  CHECK_FALSE(r.passed());
  r.per_report = true;
  r.reports[0].elapsed_ms = 900;
  CHECK(r.passed());
  r.reports.push_back(CheckReport{});
  r.reports[1].elapsed_ms = 1500;
  CHECK_FALSE(r.within_time());
}

TEST_CASE("acceptance runner honours the criterion filter") {
  AcceptanceBudget b;
  b.only = {1};
  int calls = 0;
  auto results = run_acceptance(b, [&](const CriterionResult&) { ++calls; });
  REQUIRE(results.size() == 1);
  CHECK(calls == 1);
  CHECK(results[0].id == 1);
  CHECK(results[0].passed());
}
