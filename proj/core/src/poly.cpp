#include "ordcalc/poly.hpp"

#include <chrono>
#include <set>

#include "ordcalc/errors.hpp"
#include "ordcalc/syntax.hpp"

namespace ordcalc::poly {

namespace {

constexpr SystemId kSys = SystemId::Poly;
// Each D step lifts every free level by one and drops those reaching the
// top, so FC reaches -inf after at most (1 - lowest level) steps.
constexpr int kMaxDIter = 4096;

bool is_cardinal_like(const Term& t) {
  return t.head() == Head::OmegaLevel || t.head() == Head::Var;
}

Term relevel(const Term& t, int level) {
  if (t.head() == Head::Var) return var(t.name(), level);
  return omega(level);
}

void collect_fc(int level, const Term& t, CardSet& out) {
  if (is_cardinal_like(t)) {
    if (t.level() <= level) out.insert(Card(t.level() - level));
    return;
  }
  if (t.head() == Head::ThetaPoly) {
    collect_fc(level - 1, t.arg(), out);
    return;
  }
  for (const auto& c : t.children()) collect_fc(level, c, out);
}

void collect_k(int level, const Term& t, std::vector<Term>& out) {
  if (is_cardinal_like(t)) {
    if (t.level() < level) out.push_back(relevel(t, t.level() - (level - 1)));
    return;
  }
  if (t.head() == Head::ThetaPoly) {
    if (fc_max(0, t) < Card(level)) {
      out.push_back(shift(t, 0, 1 - level));
    } else {
      collect_k(level - 1, t.arg(), out);
    }
    return;
  }
  for (const auto& c : t.children()) collect_k(level, c, out);
}

// Every variable of the terms is J-substitutable in all of them for one J < 0.
bool variables_below_top(std::initializer_list<Term> terms) {
  std::set<std::string> names;
  for (const auto& t : terms) {
    for (auto& n : variable_names(t)) names.insert(n);
  }
  for (const auto& n : names) {
    bool found = false;
    for (int j = -1; j >= -64 && !found; --j) {
      bool all = true;
      for (const auto& t : terms) all = all && substitutable(n, j, t);
      found = all;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

Term zero() { return ordcalc::zero(kSys); }

Term omega(int level) {
  if (level > 0) throw ConstructionError("Omega level must be <= 0");
  return make_node(kSys, Head::OmegaLevel, level, 0, {}, {});
}

Term theta(const Term& body) {
  if (!body.valid() || body.system() != kSys) throw ConstructionError("expected a poly term");
  return make_node(kSys, Head::ThetaPoly, 0, 0, {}, {body});
}

Term var(std::string name, int level) {
  if (level > 0) throw ConstructionError("variable level must be <= 0");
  return make_node(kSys, Head::Var, level, 0, std::move(name), {});
}

CardSet fc(int level, const Term& t) {
  CardSet out;
  collect_fc(level, t, out);
  return out;
}

Card fc_max(int level, const Term& t) { return fc(level, t).max(); }

Term shift(const Term& t, int level, int d) {
  if (d == 0) return t;
  if (is_cardinal_like(t)) {
    if (t.level() > level) return t;
    const int moved = t.level() + d;
    if (moved > level) {
      throw ShiftError("shifting " + render(t) + " by " + std::to_string(d) +
                       " crosses threshold " + std::to_string(level));
    }
    return relevel(t, moved);
  }
  if (t.children().empty()) return t;
  const int inner = t.head() == Head::ThetaPoly ? level - 1 : level;
  std::vector<Term> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(shift(c, inner, d));
  return with_children(t, std::move(kids));
}

std::vector<Term> kset(int level, const Term& t) {
  std::vector<Term> out;
  collect_k(level, t, out);
  sort_unique(out);
  return out;
}

std::vector<Term> Comparator::k0(const Term& t) {
  if (mode() == EvalMode::Reference) return kset(0, t);
  if (auto it = kcache_.find(t); it != kcache_.end()) return it->second;
  auto r = kset(0, t);
  kcache_.emplace(t, r);
  return r;
}

bool Comparator::less_sc(const Term& a, const Term& b) {
  const Head ha = a.head();
  const Head hb = b.head();
  if (ha == Head::Var || hb == Head::Var) {
    return ha == Head::Var && hb == Head::OmegaLevel && a.level() <= b.level();
  }
  if (ha == Head::OmegaLevel && hb == Head::OmegaLevel) return a.level() < b.level();
  if (ha == Head::OmegaLevel) {
    for (const auto& g : k0(b.arg())) {
      if (leq(a, g)) return true;
    }
    return false;
  }
  if (hb == Head::OmegaLevel) {
    for (const auto& g : k0(a.arg())) {
      if (!less(g, b)) return false;
    }
    return true;
  }
  if (less(a.arg(), b.arg())) {
    bool bounded = true;
    for (const auto& g : k0(a.arg())) {
      if (!less(g, b)) {
        bounded = false;
        break;
      }
    }
    if (bounded) return true;
  }
  if (less(b.arg(), a.arg())) {
    for (const auto& g : k0(b.arg())) {
      if (leq(a, g)) return true;
    }
  }
  return false;
}

Comparator& shared_comparator() {
  thread_local Comparator cmp(EvalMode::Memoized);
  return cmp;
}

Cmp compare(const Term& a, const Term& b) {
  if (!a.valid() || !b.valid() || a.system() != kSys || b.system() != kSys) {
    throw ConstructionError("expected poly terms");
  }
  return shared_comparator().compare(a, b);
}

Card ground(const Term& t) { return fc(0, t).min(); }

Term star(const Term& t) {
  const Card top = fc_max(0, t);
  if (top.is_neg_inf()) return t;
  return shift(t, 0, -top.value());
}

namespace {

Card class_of(const Term& s) {
  const Card g = ground(s);
  return g.is_neg_inf() ? g : Card(-g.value());
}

// Structural M_n membership of a normalized term at its own class index.
bool member(const Term& s) {
  const Card top = fc_max(0, s);
  if (top.is_neg_inf()) return true;
  if (top != Card(0)) return false;
  const Card n = class_of(s);
  for (const auto& b : kset(0, s)) {
    const Term bs = star(b);
    const Card m = class_of(bs);
    if (fc_max(0, bs).is_neg_inf()) continue;
    if (!(m < n) || !member(bs)) return false;
  }
  return true;
}

}  // namespace

Normalization normalize(const Term& t) {
  if (!t.closed()) throw PreconditionError("closed term", render(t));
  Normalization r;
  r.ground = ground(t);
  r.star = star(t);
  r.class_index = class_of(r.star);
  r.member = member(r.star);
  return r;
}

bool substitutable(std::string_view name, int level, const Term& t) {
  switch (t.head()) {
    case Head::Var:
      return t.name() != name || t.level() == level;
    case Head::OmegaLevel:
      return true;
    case Head::ThetaPoly:
      return substitutable(name, level - 1, t.arg());
    default:
      for (const auto& c : t.children()) {
        if (!substitutable(name, level, c)) return false;
      }
      return true;
  }
}

namespace {

Term substitute_unchecked(const Term& t, std::string_view name, int level, const Term& beta) {
  if (t.head() == Head::Var) return t.name() == name ? shift(beta, 0, level) : t;
  if (t.children().empty() || !mentions(t, name)) return t;
  const int inner = t.head() == Head::ThetaPoly ? level - 1 : level;
  std::vector<Term> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(substitute_unchecked(c, name, inner, beta));
  return with_children(t, std::move(kids));
}

}  // namespace

Term substitute(const Term& t, std::string_view name, int level, const Term& beta) {
  if (!substitutable(name, level, t)) {
    throw PreconditionError("substitutable", std::string(name) + " is not " +
                                                 std::to_string(level) + "-substitutable in " +
                                                 render(t));
  }
  return substitute_unchecked(t, name, level, beta);
}

Term dfun(int m, const Term& gamma, const Term& beta) {
  if (m < 0) throw PreconditionError("m >= 0", std::to_string(m));
  if (!(fc_max(0, gamma) < Card(0))) throw PreconditionError("fc(gamma) < 0", render(gamma));
  Term d = theta(natural_sum(omega_pow(natural_sum(omega(0), beta)), gamma));
  for (int i = 0; i < m; ++i) d = theta(omega_pow(natural_sum(omega(0), d)));
  return d;
}

bool llrel(Comparator& cmp, const Term& gamma, const Term& alpha, const Term& beta) {
  if (!(fc_max(0, gamma) < Card(0))) throw PreconditionError("fc(gamma) < 0", render(gamma));
  if (!cmp.less(alpha, beta)) return false;
  const auto ks = cmp.k0(alpha);
  if (ks.empty()) return true;
  // Bounds D_{m,gamma}(beta) for m = 0, 1, ..., built on demand.
  std::vector<Term> bounds{dfun(0, gamma, beta)};
  std::vector<Card> tops{fc_max(0, bounds.front())};
  for (const auto& eta : ks) {
    const Card target = fc_max(0, eta);
    std::size_t m = 0;
    while (!(tops[m] <= target)) {
      ++m;
      if (m == bounds.size()) {
        if (m > static_cast<std::size_t>(kMaxDIter)) {
          throw InvariantError("no D_m with small enough cardinality");
        }
        bounds.push_back(theta(omega_pow(natural_sum(omega(0), bounds.back()))));
        tops.push_back(fc_max(0, bounds.back()));
      }
    }
    if (!cmp.less(eta, bounds[m])) return false;
  }
  return true;
}

bool llrel(const Term& gamma, const Term& alpha, const Term& beta) {
  return llrel(shared_comparator(), gamma, alpha, beta);
}

LemmaOutcome key_lemma(Comparator& cmp, const KeyLemmaInstance& in) {
  LemmaOutcome out;
  switch (in.item) {
    case 1: {
      // Variables denote strongly critical terms, so only those may replace them.
      if (!in.gamma.is_sc() || !(fc_max(0, in.gamma) < Card(0))) return out;
      if (!substitutable(in.var, 0, in.alpha) || !substitutable(in.var, 0, in.beta)) return out;
      if (!cmp.less(in.alpha, in.beta)) return out;
      out.hypotheses = true;
      Term a = substitute(in.alpha, in.var, 0, in.gamma);
      Term b = substitute(in.beta, in.var, 0, in.gamma);
      out.conclusion = cmp.less(a, b);
      if (!out.conclusion) {
        out.detail = render(a) + " vs " + render(b) + " gave " + std::string(to_string(cmp.compare(a, b)));
      }
      return out;
    }
    case 2: {
      if (!(fc_max(0, in.delta) < Card(0))) return out;
      if (!variables_below_top({in.alpha, in.beta})) return out;
      if (!llrel(cmp, in.delta, in.alpha, in.beta)) return out;
      out.hypotheses = true;
      Term da = dfun(0, in.delta, in.alpha);
      Term db = dfun(0, in.delta, in.beta);
      out.conclusion = llrel(cmp, zero(), da, db);
      if (!out.conclusion) out.detail = render(da) + " not <<_0 " + render(db);
      return out;
    }
    case 3: {
      if (!(fc_max(0, in.delta) < Card(0))) return out;
      if (!substitutable(in.var, 0, in.gamma)) return out;
      if (!llrel(cmp, in.delta, in.alpha, in.beta)) return out;
      if (!llrel(cmp, in.delta, in.gamma, in.beta)) return out;
      out.hypotheses = true;
      Term x = shift(dfun(0, in.delta, in.alpha), 0, -1);
      Term lhs = dfun(0, x, substitute(in.gamma, in.var, 0, x));
      Term rhs = dfun(0, in.delta, in.beta);
      out.conclusion = llrel(cmp, zero(), lhs, rhs);
      if (!out.conclusion) out.detail = render(lhs) + " not <<_0 " + render(rhs);
      return out;
    }
    default:
      throw PreconditionError("item in 1..3", std::to_string(in.item));
  }
}

CheckReport check_key_lemma(const std::vector<KeyLemmaInstance>& sample) {
  CheckReport rep;
  rep.check = "key_lemma";
  rep.system = kSys;
  const auto start = std::chrono::steady_clock::now();
  Comparator& cmp = shared_comparator();
  auto describe = [](const KeyLemmaInstance& i) {
    return "item=" + std::to_string(i.item) + " alpha=" + render(i.alpha) + " beta=" + render(i.beta) +
           " gamma=" + render(i.gamma) + " delta=" + render(i.delta);
  };
  for (const auto& inst : sample) {
    ++rep.attempted;
    try {
      auto o = key_lemma(cmp, inst);
      if (!o.hypotheses) continue;
      ++rep.checked;
      if (!o.conclusion) rep.add_violation(describe(inst), "conclusion holds", o.detail);
    } catch (const Error& e) {
      ++rep.checked;
      rep.add_violation(describe(inst), "no error", e.what());
    }
  }
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace ordcalc::poly
