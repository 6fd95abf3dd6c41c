#include <chrono>
#include <functional>

#include "ordcalc/buchholz.hpp"
#include "ordcalc/errors.hpp"
#include "ordcalc/harness.hpp"
#include "ordcalc/mixed.hpp"
#include "ordcalc/poly.hpp"
#include "ordcalc/syntax.hpp"
#include "ordcalc/xi.hpp"

namespace ordcalc::harness {

namespace {

struct Fixture {
  const char* name;
  const char* expected;
  std::function<std::string()> run;
};

Term B(const char* s) { return parse(SystemId::Buchholz, s); }
Term P(const char* s) { return parse(SystemId::Poly, s); }
Term X(const char* s) { return parse(SystemId::Xi, s); }
Term M(const char* s) { return parse(SystemId::Mixed, s); }

template <class F>
std::string error_kind(F&& f) {
  try {
    f();
    return "ok";
  } catch (const ParseError&) {
    return "parse error";
  } catch (const ShiftError&) {
    return "shift error";
  } catch (const PreconditionError&) {
    return "precondition error";
  } catch (const Error&) {
    return "error";
  }
}

std::string set_text(const std::vector<Term>& ts) {
  std::string out = "{";
  for (std::size_t i = 0; i < ts.size(); ++i) out += (i ? ", " : "") + render(ts[i]);
  return out + "}";
}

std::string set_text(const std::vector<xi::Critical>& ts) {
  std::vector<Term> terms;
  for (const auto& c : ts) terms.push_back(c.term);
  return set_text(terms);
}

std::string cmp_text(Cmp c) { return std::string(to_string(c)); }

std::vector<Fixture> fixtures() {
  return {
      {"buchholz scope rule rejects th_1(v.x_1)", "parse error",
       [] { return error_kind([] { B("th_1(v.x_1)"); }); }},
      {"buchholz classify th_1(v.x_1) invalid", "invalid",
       [] {
         Term t = buchholz::theta(1, buchholz::var("x", 1));
         return std::string(buchholz::classify(t).is_valid ? "valid" : "invalid");
       }},
      {"buchholz FC(O_3 # O_2 # w^(O_1))", "3",
       [] { return buchholz::fc(B("O_3 # O_2 # w^(O_1)")).max.to_string(); }},
      {"buchholz O_2 < O_3", "LT", [] { return cmp_text(buchholz::compare(B("O_2"), B("O_3"))); }},
      {"buchholz substitution needs FC(gamma) < n", "precondition error",
       [] { return error_kind([] { buchholz::substitute(B("th_2(v.x_1)"), "x", 1, B("O_1")); }); }},
      {"buchholz <<^0 is <", "true",
       [] { return std::string(buchholz::llrel(0, B("0"), B("0"), B("w^(0)")) ? "true" : "false"); }},
      {"poly FC(O^(-1) # O^(-2) # O^(-2))", "-1",
       [] { return poly::fc_max(0, P("O^(-1) # O^(-2) # O^(-2)")).to_string(); }},
      {"poly FC(th(O^(0) # O^(-1)))", "0",
       [] { return poly::fc_max(0, P("th(O^(0) # O^(-1))")).to_string(); }},
      {"poly upward shift of th(O^(-1)) collides", "shift error",
       [] { return error_kind([] { poly::shift(P("th(O^(-1))"), 0, 1); }); }},
      {"poly K(th(O^(0) # O^(-1))) empty", "{}",
       [] { return set_text(poly::kset(0, P("th(O^(0) # O^(-1))"))); }},
      {"poly K(th(O^(0)))", "{th(O^(0))}", [] { return set_text(poly::kset(0, P("th(O^(0))"))); }},
      {"poly O^(-2) < O^(-1)", "LT", [] { return cmp_text(poly::compare(P("O^(-2)"), P("O^(-1)"))); }},
      {"xi K(th(Xi^(-1)(0)))", "{th(v.v^(0))}",
       [] { return set_text(xi::kset(0, X("th(Xi^(-1)(0))"))); }},
      {"xi Xi^(0)(0) < Xi^(0)(w^(0))", "LT",
       [] { return cmp_text(xi::compare(X("Xi^(0)(0)"), X("Xi^(0)(w^(0))"))); }},
      {"xi Xi^(-1)(w^(0)) < Xi^(0)(0)", "LT",
       [] { return cmp_text(xi::compare(X("Xi^(-1)(w^(0))"), X("Xi^(0)(0)"))); }},
      {"mixed (-1,2) - (-1)", "(0,inf)", [] { return card_minus(MCard::large(-1, 2), -1).to_string(); }},
      {"mixed min{(0,3), 1}", "(0,1)", [] { return card_min(MCard::large(0, 3), 1).to_string(); }},
      {"mixed (-1,inf) < (0,0)", "LT",
       [] {
         return std::string(MCard::large(-1, MCard::kInfinity) < MCard::large(0, 0) ? "LT" : "not LT");
       }},
      {"mixed shift leaves O_3", "O_3", [] { return render(mixed::shift(M("O_3"), mixed::kTop, 1)); }},
      {"mixed FC(O_3)", "3", [] { return mixed::fc_max(mixed::kTop, M("O_3")).to_string(); }},
      {"mixed K_1(Xi^(0)(0)) empty", "{}", [] { return set_text(mixed::kset_low(1, M("Xi^(0)(0)"))); }},
      {"mixed O_5 < OO_1^(0)", "LT", [] { return cmp_text(mixed::compare(M("O_5"), M("OO_1^(0)"))); }},
      {"mixed OO_2^(-1) < Xi^(0)(0)", "LT",
       [] { return cmp_text(mixed::compare(M("OO_2^(-1)"), M("Xi^(0)(0)"))); }},
      {"mixed Xi^(0)(0) < OO_1^(0)", "LT",
       [] { return cmp_text(mixed::compare(M("Xi^(0)(0)"), M("OO_1^(0)"))); }},
      {"cli cmp poly O^(-2) O^(-1)", "LT", [] { return cmp_text(poly::compare(P("O^(-2)"), P("O^(-1)"))); }},
      {"cli k poly th(O^(0))", "{th(O^(0))}", [] { return set_text(poly::kset(0, P("th(O^(0))"))); }},
  };
}

}  // namespace

CheckReport check_fixtures() {
  CheckReport rep;
  rep.check = "fixtures";
  const auto start = std::chrono::steady_clock::now();
  for (const auto& f : fixtures()) {
    ++rep.checked;
    std::string got;
    try {
      got = f.run();
    } catch (const std::exception& e) {
      got = std::string("exception: ") + e.what();
    }
    if (got != f.expected) rep.add_violation(f.name, f.expected, got);
  }
  rep.attempted = rep.checked;
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace ordcalc::harness
