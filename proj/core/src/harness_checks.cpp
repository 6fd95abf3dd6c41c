#include <algorithm>
#include <chrono>
#include <random>

#include "json.hpp"

#include "ordcalc/buchholz.hpp"
#include "ordcalc/errors.hpp"
#include "ordcalc/harness.hpp"
#include "ordcalc/mixed.hpp"
#include "ordcalc/poly.hpp"
#include "ordcalc/syntax.hpp"
#include "ordcalc/xi.hpp"

namespace ordcalc::harness {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

CheckReport start_report(std::string check, SystemId system, std::uint64_t seed = 0) {
  CheckReport r;
  r.check = std::move(check);
  r.system = system;
  r.seed = seed;
  return r;
}

template <class C>
Cmp reference_compare(const Term& a, const Term& b) {
  C cmp(EvalMode::Reference);
  return cmp.compare(a, b);
}

// Bottom-up merge sort: well defined even when the comparator is not a
// strict weak order, unlike std::sort.
void merge_sort(std::vector<Term>& v, SystemId system) {
  std::vector<Term> buf(v.size());
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, v.size());
      const std::size_t hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo;
      std::size_t j = mid;
      std::size_t k = lo;
      while (i < mid && j < hi) buf[k++] = less(system, v[j], v[i]) ? v[j++] : v[i++];
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
    }
    v.swap(buf);
  }
}

}  // namespace

bool less(SystemId system, const Term& a, const Term& b) {
  switch (system) {
    case SystemId::Buchholz: return buchholz::shared_comparator().less(a, b);
    case SystemId::Poly: return poly::shared_comparator().less(a, b);
    case SystemId::Xi: return xi::shared_comparator().less(a, b);
    case SystemId::Mixed: return mixed::shared_comparator().less(a, b);
  }
  return false;
}

namespace {
bool less_once(SystemId system, const Term& a, const Term& b) {
  switch (system) {
    case SystemId::Buchholz: return buchholz::shared_comparator().less_once(a, b);
    case SystemId::Poly: return poly::shared_comparator().less_once(a, b);
    case SystemId::Xi: return xi::shared_comparator().less_once(a, b);
    case SystemId::Mixed: return mixed::shared_comparator().less_once(a, b);
  }
  return false;
}
}  // namespace

Cmp compare(SystemId system, const Term& a, const Term& b, EvalMode mode) {
  if (mode == EvalMode::Reference) {
    switch (system) {
      case SystemId::Buchholz: return reference_compare<buchholz::Comparator>(a, b);
      case SystemId::Poly: return reference_compare<poly::Comparator>(a, b);
      case SystemId::Xi: return reference_compare<xi::Comparator>(a, b);
      case SystemId::Mixed: return reference_compare<mixed::Comparator>(a, b);
    }
  }
  switch (system) {
    case SystemId::Buchholz: return buchholz::shared_comparator().compare(a, b);
    case SystemId::Poly: return poly::shared_comparator().compare(a, b);
    case SystemId::Xi: return xi::shared_comparator().compare(a, b);
    case SystemId::Mixed: return mixed::shared_comparator().compare(a, b);
  }
  return Cmp::Incomparable;
}

void clear_caches() {
  buchholz::shared_comparator() = buchholz::Comparator(EvalMode::Memoized);
  poly::shared_comparator() = poly::Comparator(EvalMode::Memoized);
  xi::shared_comparator() = xi::Comparator(EvalMode::Memoized);
  mixed::shared_comparator() = mixed::Comparator(EvalMode::Memoized);
}

CheckReport check_order_axioms(SystemId system, const std::vector<Term>& terms,
                               const AxiomOptions& opt) {
  auto rep = start_report("order_axioms", system, opt.seed);
  const auto start = Clock::now();
  std::mt19937_64 rng(opt.seed);
  const std::size_t n = terms.size();

  auto check_pair = [&](const Term& a, const Term& b) {
    ++rep.checked;
    if (a == b) return;  // duplicates are Equal, which is allowed
    const bool lt = less_once(system, a, b);
    const bool gt = less_once(system, b, a);
    if (lt && gt) rep.add_violation(render(a) + " , " + render(b), "at most one of <, >", "both");
    if (!lt && !gt) rep.add_violation(render(a) + " , " + render(b), "LT or GT", "INC");
  };
  // Inputs are rendered only when something throws.
  auto guarded = [&](auto&& f, auto&& inputs) {
    try {
      f();
    } catch (const Error& e) {
      rep.add_violation(std::string(inputs()), "no error", e.what());
    }
  };

  for (const auto& t : terms) {
    ++rep.checked;
    guarded([&] {
      if (less(system, t, t)) rep.add_violation(render(t), "not t < t", "t < t");
    }, [&] { return render(t); });
  }

  if (n <= opt.all_pairs_limit) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        guarded([&] { check_pair(terms[i], terms[j]); },
                [&] { return render(terms[i]) + " , " + render(terms[j]); });
      }
    }
  } else if (n > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < opt.sampled_pairs; ++k) {
      std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      if (i == j) continue;
      guarded([&] { check_pair(terms[i], terms[j]); },
                [&] { return render(terms[i]) + " , " + render(terms[j]); });
    }
  }

  if (n >= 3) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < opt.triples; ++k) {
      const Term* t[3] = {&terms[pick(rng)], &terms[pick(rng)], &terms[pick(rng)]};
      ++rep.checked;
      guarded([&] {
        static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& p : perms) {
          const Term& a = *t[p[0]];
          const Term& b = *t[p[1]];
          const Term& c = *t[p[2]];
          if (less(system, a, b) && less(system, b, c) && !less(system, a, c)) {
            rep.add_violation(render(a) + " < " + render(b) + " < " + render(c), "transitive", "not a < c");
          }
        }
      }, [] { return "triple"; });
    }
  }

  guarded([&] {
    std::vector<Term> sorted = terms;
    merge_sort(sorted, system);
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      ++rep.checked;
      if (sorted[i] != sorted[i + 1] && !less(system, sorted[i], sorted[i + 1])) {
        rep.add_violation(render(sorted[i]) + " , " + render(sorted[i + 1]), "sorted neighbours increase",
                          std::string(to_string(compare(system, sorted[i], sorted[i + 1]))));
      }
    }
    if (sorted.size() >= 2) {
      std::uniform_int_distribution<std::size_t> pick(0, sorted.size() - 1);
      for (std::size_t k = 0; k < 10'000; ++k) {
        std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        ++rep.checked;
        if (sorted[i] != sorted[j] && !less(system, sorted[i], sorted[j])) {
          rep.add_violation(render(sorted[i]) + " , " + render(sorted[j]), "sorted order agrees with pairs",
                            std::string(to_string(compare(system, sorted[i], sorted[j]))));
        }
      }
    }
  }, [] { return "sort"; });

  rep.attempted = rep.checked;
  rep.elapsed_ms = ms_since(start);
  return rep;
}

CheckReport check_fc_monotonicity(const std::vector<Term>& terms) {
  auto rep = start_report("fc_monotonicity", SystemId::Buchholz);
  const auto start = Clock::now();
  std::vector<Card> fcs;
  fcs.reserve(terms.size());
  for (const auto& t : terms) fcs.push_back(buchholz::fc(t).max);
  auto& cmp = buchholz::shared_comparator();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (!(fcs[i] < fcs[j])) continue;
      ++rep.checked;
      if (!cmp.less(terms[i], terms[j])) {
        rep.add_violation(render(terms[i]) + " , " + render(terms[j]), "LT",
                          std::string(to_string(cmp.compare(terms[i], terms[j]))));
      }
    }
  }
  rep.attempted = rep.checked;
  rep.elapsed_ms = ms_since(start);
  return rep;
}

// K^{<0}(a) is what the collapse th(a) must dominate, so its elements are
// expressed one level above a's own frame. Read in a's frame, that is after
// shifting down by one, every element has cardinality below that of a. The
// assertion is made for normalized a (FC(a) = 0), the only case the class
// construction uses, together with the ground increase G(b*) > G(a).
// Literal mode compares FC(b) with FC(a) unshifted and is informational.
CheckReport check_kset_drop(const std::vector<Term>& terms, bool literal) {
  auto rep = start_report(literal ? "kset_drop_literal" : "kset_drop", SystemId::Poly);
  const auto start = Clock::now();
  for (const auto& t : terms) {
    ++rep.attempted;
    try {
      const Term a = poly::star(t);
      const Card top = poly::fc_max(0, a);
      if (top.is_neg_inf()) continue;
      for (const auto& b : poly::kset(0, a)) {
        ++rep.checked;
        const Card fb = poly::fc_max(0, b);
        if (literal) {
          if (!(fb < top)) {
            rep.add_violation(render(a) + " ; " + render(b), "FC(b) < " + top.to_string(), fb.to_string());
          }
          continue;
        }
        const Card own = poly::fc_max(0, poly::shift(b, 0, -1));
        if (!(own < top)) {
          rep.add_violation(render(a) + " ; " + render(b), "FC(b lowered) < " + top.to_string(), own.to_string());
        }
        if (!fb.is_neg_inf() && !(poly::ground(poly::star(b)) > poly::ground(a))) {
          rep.add_violation(render(a) + " ; " + render(b), "G(b*) > G(a)",
                            poly::ground(poly::star(b)).to_string() + " vs " + poly::ground(a).to_string());
        }
      }
    } catch (const Error& e) {
      rep.add_violation(render(t), "no error", e.what());
    }
  }
  rep.elapsed_ms = ms_since(start);
  return rep;
}

CheckReport check_membership(const std::vector<Term>& terms) {
  auto rep = start_report("membership", SystemId::Poly);
  const auto start = Clock::now();
  for (const auto& t : terms) {
    if (!t.closed()) continue;
    ++rep.checked;
    try {
      auto n = poly::normalize(t);
      if (!n.member) {
        rep.add_violation(render(t), "member at class " + n.class_index.to_string(), "not a member");
      }
    } catch (const Error& e) {
      rep.add_violation(render(t), "no error", e.what());
    }
  }
  rep.attempted = rep.checked;
  rep.elapsed_ms = ms_since(start);
  return rep;
}

CheckReport check_abstraction(const std::vector<Term>& terms) {
  auto rep = start_report("abstraction", SystemId::Xi);
  const auto start = Clock::now();
  for (const auto& t : terms) {
    ++rep.checked;
    try {
      const Term back = xi::apply(xi::abstract(t));
      if (back != t) rep.add_violation(render(t), render(t), render(back));
    } catch (const Error& e) {
      rep.add_violation(render(t), "no error", e.what());
    }
  }
  rep.attempted = rep.checked;
  rep.elapsed_ms = ms_since(start);
  return rep;
}

CheckReport check_round_trip(const std::vector<Term>& terms) {
  auto rep = start_report("round_trip", terms.empty() ? SystemId::Buchholz : terms.front().system());
  const auto start = Clock::now();
  for (const auto& t : terms) {
    ++rep.checked;
    const std::string text = render(t);
    try {
      const Term back = parse(t.system(), text);
      if (back != t) rep.add_violation(text, text, render(back));
    } catch (const Error& e) {
      rep.add_violation(text, "parses", e.what());
    }
  }
  rep.attempted = rep.checked;
  rep.elapsed_ms = ms_since(start);
  return rep;
}

CheckReport check_oracle(SystemId system, const std::vector<Term>& terms, std::size_t pairs,
                         std::uint64_t seed) {
  auto rep = start_report("oracle", system, seed);
  const auto start = Clock::now();
  if (terms.empty()) return rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
  for (std::size_t k = 0; k < pairs; ++k) {
    const Term& a = terms[pick(rng)];
    const Term& b = terms[pick(rng)];
    ++rep.checked;
    try {
      const Cmp fast = compare(system, a, b, EvalMode::Memoized);
      const Cmp slow = compare(system, a, b, EvalMode::Reference);
      if (fast != slow) {
        rep.add_violation(render(a) + " , " + render(b), std::string(to_string(slow)),
                          std::string(to_string(fast)));
      }
    } catch (const Error& e) {
      rep.add_violation(render(a) + " , " + render(b), "no error", e.what());
    }
  }
  rep.attempted = rep.checked;
  rep.elapsed_ms = ms_since(start);
  return rep;
}

namespace {

nlohmann::ordered_json to_json(const CheckReport& r, bool with_time) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["system"] = std::string(to_string(r.system));
  j["checked"] = r.checked;
  j["attempted"] = r.attempted;
  j["violation_count"] = r.violation_count;
  auto& vs = j["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : r.violations) {
    vs.push_back({{"inputs", v.inputs}, {"expected", v.expected}, {"got", v.got}});
  }
  j["seed"] = r.seed;
  if (with_time) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

}  // namespace

std::string to_json_line(const CheckReport& r) { return to_json(r, true).dump(); }
std::string to_json_line_stable(const CheckReport& r) { return to_json(r, false).dump(); }

}  // namespace ordcalc::harness
