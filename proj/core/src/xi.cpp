#include "ordcalc/xi.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "ordcalc/errors.hpp"
#include "ordcalc/syntax.hpp"

namespace ordcalc::xi {

namespace {

constexpr SystemId kSys = SystemId::Xi;
constexpr int kMaxDIter = 4096;

using Replacement = std::map<std::string, Term, std::less<>>;

Term relevel(const Term& t, int level) {
  return make_node(kSys, t.head(), level, 0, t.name(), {t.children().begin(), t.children().end()});
}

Term with_arg(const Term& t, Term arg) { return with_children(t, {std::move(arg)}); }

void collect_fc(int level, const Term& t, CardSet& out) {
  switch (t.head()) {
    case Head::Xi:
    case Head::FVar: {
      const int j = t.level();
      if (j <= level) {
        out.insert(Card(j - level));
        for (auto c : fc(0, t.arg()).values) out.insert(Card(c.value() + (j - level)));
      } else {
        collect_fc(level - j, t.arg(), out);
      }
      return;
    }
    case Head::Var:
      if (t.level() <= level) out.insert(Card(t.level() - level - 1));
      return;
    case Head::ThetaPoly:
      collect_fc(level - 1, t.arg(), out);
      return;
    default:
      for (const auto& c : t.children()) collect_fc(level, c, out);
  }
}

struct AbstractState {
  std::set<std::string> taken;
  std::vector<std::string> names;
  std::vector<Term> params;

  const std::string& name_for(const Term& p) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (params[i] == p) return names[i];
    }
    std::string candidate = "v";
    for (int k = 1; taken.count(candidate) != 0; ++k) candidate = "v" + std::to_string(k);
    taken.insert(candidate);
    params.push_back(p);
    names.push_back(candidate);
    return names.back();
  }
};

Term abstract_rec(const Term& t, int level, AbstractState& st) {
  switch (t.head()) {
    case Head::Xi:
      if (t.level() == level) return var(st.name_for(xi(0, t.arg())), level);
      if (t.level() > level) return with_arg(t, abstract_rec(t.arg(), level - t.level(), st));
      return t;
    case Head::FVar:
      if (t.level() > level) return with_arg(t, abstract_rec(t.arg(), level - t.level(), st));
      return t;
    case Head::Var:
      return t;
    case Head::ThetaPoly:
      return with_arg(t, abstract_rec(t.arg(), level - 1, st));
    default: {
      if (t.children().empty()) return t;
      std::vector<Term> kids;
      kids.reserve(t.children().size());
      for (const auto& c : t.children()) kids.push_back(abstract_rec(c, level, st));
      return with_children(t, std::move(kids));
    }
  }
}

void collect_k(int level, const Term& t, std::vector<Critical>& out) {
  switch (t.head()) {
    case Head::Xi:
    case Head::FVar:
      if (t.level() < level) {
        out.push_back({relevel(t, t.level() - (level - 1)), {}});
      } else {
        collect_k(level - t.level(), t.arg(), out);
      }
      return;
    case Head::Var:
      if (t.level() < level) out.push_back({var(t.name(), t.level() - (level - 1)), {}});
      return;
    case Head::ThetaPoly:
      if (fc_max(0, t) <= Card(level)) {
        Abstraction a = abstract(shift(t, 0, -level));
        std::vector<std::string> holes = a.variables;
        std::sort(holes.begin(), holes.end());
        out.push_back({shift(a.body, 0, 1), std::move(holes)});
      } else {
        collect_k(level - 1, t.arg(), out);
      }
      return;
    default:
      for (const auto& c : t.children()) collect_k(level, c, out);
  }
}

bool has_fvar(const Term& t) {
  if (t.head() == Head::FVar) return true;
  for (const auto& c : t.children()) {
    if (has_fvar(c)) return true;
  }
  return false;
}

void collect_sc(const Term& t, std::vector<Term>& out) {
  if (t.is_sc()) out.push_back(t);
  for (const auto& c : t.children()) collect_sc(c, out);
}

// Stands in for a free variable that exceeds every proper strongly critical
// subterm of d lying below d. Bound cardinals inside d are not candidates.
Term largest_proper_sc(Comparator& cmp, const Term& d) {
  std::vector<Term> subs;
  for (const auto& c : d.children()) collect_sc(c, subs);
  sort_unique(subs);
  Term best = zero();
  for (const auto& s : subs) {
    if (cmp.less(s, d) && cmp.less(best, s)) best = s;
  }
  return best;
}

Term fill_holes(const Critical& c, const Term& value) {
  if (c.holes.empty()) return c.term;
  Replacement r;
  for (const auto& h : c.holes) r.emplace(h, value);
  return substitute_all(c.term, r, 0);
}

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
Term one() { return omega_pow(zero()); }

Term xi(int level, const Term& arg) {
  if (level > 0) throw ConstructionError("Xi level must be <= 0");
  if (!arg.valid() || arg.system() != kSys) throw ConstructionError("expected an xi term");
  return make_node(kSys, Head::Xi, level, 0, {}, {arg});
}

Term theta(const Term& body) {
  if (!body.valid() || body.system() != kSys) throw ConstructionError("expected an xi term");
  return make_node(kSys, Head::ThetaPoly, 0, 0, {}, {body});
}

Term var(std::string name, int level) {
  if (level > 0) throw ConstructionError("variable level must be <= 0");
  return make_node(kSys, Head::Var, level, 0, std::move(name), {});
}

Term fvar(std::string name, int level, const Term& arg) {
  if (level > 0) throw ConstructionError("function variable level must be <= 0");
  if (!arg.valid() || arg.system() != kSys) throw ConstructionError("expected an xi term");
  return make_node(kSys, Head::FVar, level, 0, std::move(name), {arg});
}

CardSet fc(int level, const Term& t) {
  CardSet out;
  collect_fc(level, t, out);
  return out;
}

Card fc_max(int level, const Term& t) { return fc(level, t).max(); }

Term shift(const Term& t, int level, int d) {
  if (d == 0) return t;
  switch (t.head()) {
    case Head::Xi:
    case Head::FVar:
      if (t.level() <= level) {
        const int moved = t.level() + d;
        if (moved > level) {
          throw ShiftError("shifting " + render(t) + " by " + std::to_string(d) +
                           " crosses threshold " + std::to_string(level));
        }
        return relevel(t, moved);
      }
      return with_arg(t, shift(t.arg(), level - t.level(), d));
    case Head::Var: {
      if (t.level() > level) return t;
      // A variable sits at the bottom of its level, one below the cardinal.
      const int moved = t.level() + d;
      if (moved > level + 1 || moved > 0) {
        throw ShiftError("shifting " + render(t) + " by " + std::to_string(d) +
                         " crosses threshold " + std::to_string(level));
      }
      return relevel(t, moved);
    }
    case Head::ThetaPoly:
      return with_arg(t, shift(t.arg(), level - 1, d));
    default: {
      if (t.children().empty()) return t;
      std::vector<Term> kids;
      kids.reserve(t.children().size());
      for (const auto& c : t.children()) kids.push_back(shift(c, level, d));
      return with_children(t, std::move(kids));
    }
  }
}

bool substitutable(std::string_view name, int level, const Term& t) {
  switch (t.head()) {
    case Head::Var:
      return t.name() != name || t.level() == level;
    case Head::Xi:
    case Head::FVar:
      return !mentions(t.arg(), name) ||
             (level <= t.level() && substitutable(name, level - t.level(), t.arg()));
    case Head::ThetaPoly:
      return substitutable(name, level - 1, t.arg());
    default:
      for (const auto& c : t.children()) {
        if (!substitutable(name, level, c)) return false;
      }
      return true;
  }
}

Term substitute_all(const Term& t, const Replacement& repl, int level) {
  switch (t.head()) {
    case Head::Var: {
      auto it = repl.find(t.name());
      return it == repl.end() ? t : shift(it->second, 0, level);
    }
    case Head::Xi:
    case Head::FVar:
      if (level <= t.level()) return with_arg(t, substitute_all(t.arg(), repl, level - t.level()));
      return t;
    case Head::ThetaPoly:
      return with_arg(t, substitute_all(t.arg(), repl, level - 1));
    default: {
      if (t.children().empty() || t.closed()) return t;
      std::vector<Term> kids;
      kids.reserve(t.children().size());
      for (const auto& c : t.children()) kids.push_back(substitute_all(c, repl, level));
      return with_children(t, std::move(kids));
    }
  }
}

Term substitute(const Term& t, std::string_view name, int level, const Term& beta) {
  if (!substitutable(name, level, t)) {
    throw PreconditionError("substitutable", std::string(name) + " is not " +
                                                 std::to_string(level) + "-substitutable in " +
                                                 render(t));
  }
  return substitute_all(t, Replacement{{std::string(name), beta}}, level);
}

bool fsubstitutable(std::string_view fname, int level, const Term& t) {
  switch (t.head()) {
    case Head::Var:
      return true;
    case Head::FVar:
      if (t.name() == fname) return level == t.level() && fsubstitutable(fname, 0, t.arg());
      [[fallthrough]];
    case Head::Xi:
      return !mentions(t.arg(), fname) ||
             (level <= t.level() && fsubstitutable(fname, level - t.level(), t.arg()));
    case Head::ThetaPoly:
      return !mentions(t, fname);
    default:
      for (const auto& c : t.children()) {
        if (!fsubstitutable(fname, level, c)) return false;
      }
      return true;
  }
}

namespace {

Term fsubst_rec(const Term& t, std::string_view fname, int level, const Term& body,
                std::string_view w) {
  if (!mentions(t, fname)) return t;
  switch (t.head()) {
    case Head::FVar:
      if (t.name() == fname) {
        Term inner = fsubst_rec(t.arg(), fname, 0, body, w);
        return substitute_all(body, Replacement{{std::string(w), inner}}, 0);
      }
      [[fallthrough]];
    case Head::Xi:
      if (level <= t.level()) return with_arg(t, fsubst_rec(t.arg(), fname, level - t.level(), body, w));
      return t;
    case Head::ThetaPoly:
      return with_arg(t, fsubst_rec(t.arg(), fname, level - 1, body, w));
    default: {
      std::vector<Term> kids;
      kids.reserve(t.children().size());
      for (const auto& c : t.children()) kids.push_back(fsubst_rec(c, fname, level, body, w));
      return with_children(t, std::move(kids));
    }
  }
}

}  // namespace

Term fsubstitute(const Term& t, std::string_view fname, int level, const Term& body,
                 std::string_view w) {
  // w is filled wherever it occurs in body, as holes are: the bodies built by
  // the dominance lemma carry w under a collapse.
  if (!fsubstitutable(fname, level, t)) {
    throw PreconditionError("fsubstitutable", std::string(fname) + " is not " + std::to_string(level) +
                                                  "-substitutable in " + render(t));
  }
  return fsubst_rec(t, fname, level, body, w);
}

Abstraction abstract(const Term& t) {
  AbstractState st;
  for (auto& n : variable_names(t)) st.taken.insert(std::move(n));
  Abstraction a;
  a.body = abstract_rec(t, 0, st);
  a.variables = std::move(st.names);
  a.parameters = std::move(st.params);
  return a;
}

Term apply(const Abstraction& a) {
  if (a.variables.empty()) return a.body;
  Replacement r;
  for (std::size_t i = 0; i < a.variables.size(); ++i) r.emplace(a.variables[i], a.parameters[i]);
  return substitute_all(a.body, r, 0);
}

std::optional<Term> kappa(const Term& t) {
  const Card top = fc_max(0, t);
  if (top.is_neg_inf()) return std::nullopt;
  if (top != Card(0)) throw PreconditionError("fc in {-inf, 0}", render(t));
  auto params = abstract(t).parameters;
  if (params.empty()) throw InvariantError("cardinality 0 without a parameter: " + render(t));
  Comparator& cmp = shared_comparator();
  Term best = params.front().arg();
  for (const auto& p : params) {
    if (cmp.less(best, p.arg())) best = p.arg();
  }
  return best;
}

std::vector<Critical> kset(int level, const Term& t) {
  std::vector<Critical> out;
  collect_k(level, t, out);
  std::sort(out.begin(), out.end(), [](const Critical& a, const Critical& b) {
    if (auto c = structural_compare(a.term, b.term); c != 0) return c < 0;
    return a.holes < b.holes;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Critical> Comparator::k0(const Term& t) {
  if (mode() == EvalMode::Reference) return kset(0, t);
  if (auto it = kcache_.find(t); it != kcache_.end()) return it->second;
  auto r = kset(0, t);
  kcache_.emplace(t, r);
  return r;
}

const std::vector<Term>& Comparator::k0_closed(const Term& t) {
  auto build = [&] {
    std::vector<Term> out;
    for (const auto& c : k0(t)) out.push_back(fill_holes(c, zero()));
    sort_unique(out);
    return out;
  };
  if (mode() == EvalMode::Reference) {
    scratch_ = build();
    return scratch_;
  }
  if (auto it = kclosed_.find(t); it != kclosed_.end()) return it->second;
  return kclosed_.emplace(t, build()).first->second;
}

std::vector<Term> Comparator::against_xi(const Term& arg, const Term& xi) {
  if (policy_ == HolePolicy::Zero) return k0_closed(arg);
  std::vector<Term> out;
  for (const auto& c : k0(arg)) out.push_back(fill_holes(c, xi));
  return out;
}

bool Comparator::less_sc(const Term& a, const Term& b) {
  const Head ha = a.head();
  const Head hb = b.head();
  switch (ha) {
    case Head::Var:
      return hb == Head::Xi && a.level() <= b.level();
    case Head::FVar:
      if (hb == Head::Xi) {
        return a.level() < b.level() || (a.level() == b.level() && leq(a.arg(), b.arg()));
      }
      if (hb == Head::FVar && a.name() == b.name()) {
        return a.level() < b.level() || (a.level() == b.level() && less(a.arg(), b.arg()));
      }
      return false;
    case Head::Xi:
      if (hb == Head::Xi) {
        return a.level() < b.level() || (a.level() == b.level() && less(a.arg(), b.arg()));
      }
      if (hb == Head::ThetaPoly) {
        for (const auto& k : against_xi(b.arg(), a)) {
          if (leq(a, k)) return true;
        }
      }
      return false;
    case Head::ThetaPoly:
      break;
    default:
      return false;
  }
  if (hb == Head::Xi) {
    for (const auto& k : against_xi(a.arg(), b)) {
      if (!less(k, b)) return false;
    }
    return true;
  }
  if (hb != Head::ThetaPoly) return false;
  if (less(a.arg(), b.arg())) {
    // Copies: the cached vectors may rehash during the recursive comparisons.
    const std::vector<Term> ka = k0_closed(a.arg());
    bool bounded = true;
    for (const auto& k : ka) {
      if (!less(k, b)) {
        bounded = false;
        break;
      }
    }
    if (bounded) return true;
  }
  if (less(b.arg(), a.arg())) {
    const std::vector<Term> kb = k0_closed(b.arg());
    for (const auto& k : kb) {
      if (leq(a, k)) return true;
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
    throw ConstructionError("expected xi terms");
  }
  return shared_comparator().compare(a, b);
}

Term dfun(int m, const Term& gamma, const Term& beta, std::string_view w) {
  if (m < 0) throw PreconditionError("m >= 0", std::to_string(m));
  if (!(fc_max(0, gamma) < Card(0))) throw PreconditionError("fc(gamma) < 0", render(gamma));
  const Term applied = substitute_all(gamma, Replacement{{std::string(w), xi(0, zero())}}, 0);
  Term d = theta(natural_sum(omega_pow(natural_sum(xi(0, one()), beta)), applied));
  for (int i = 0; i < m; ++i) d = theta(omega_pow(natural_sum(xi(0, one()), d)));
  return d;
}

bool llrel(Comparator& cmp, const Term& gamma, const Term& alpha, const Term& beta,
           std::string_view w) {
  if (!(fc_max(0, gamma) < Card(0))) throw PreconditionError("fc(gamma) < 0", render(gamma));
  if (!cmp.less(alpha, beta)) return false;
  const auto ks = cmp.k0(alpha);
  if (ks.empty()) return true;
  std::vector<Term> bounds{dfun(0, gamma, beta, w)};
  std::vector<Card> tops{fc_max(0, bounds.front())};
  for (const auto& eta : ks) {
    const Card target = fc_max(0, eta.term);
    std::size_t m = 0;
    while (!(tops[m] <= target)) {
      ++m;
      if (m == bounds.size()) {
        if (m > static_cast<std::size_t>(kMaxDIter)) {
          throw InvariantError("no D_m with small enough cardinality");
        }
        bounds.push_back(theta(omega_pow(natural_sum(xi(0, one()), bounds.back()))));
        tops.push_back(fc_max(0, bounds.back()));
      }
    }
    const Term probe = eta.holes.empty() ? eta.term : fill_holes(eta, largest_proper_sc(cmp, bounds[m]));
    if (!cmp.less(probe, bounds[m])) return false;
  }
  return true;
}

bool llrel(const Term& gamma, const Term& alpha, const Term& beta, std::string_view w) {
  return llrel(shared_comparator(), gamma, alpha, beta, w);
}

LemmaOutcome key_lemma(Comparator& cmp, const KeyLemmaInstance& in) {
  LemmaOutcome out;
  auto fail_detail = [&](const Term& l, const Term& r, const char* rel) {
    out.detail = render(l) + " " + rel + " " + render(r) + " failed";
  };
  switch (in.item) {
    case 1: {
      if (has_fvar(in.alpha) || has_fvar(in.beta)) return out;
      if (!mentions(in.gamma, in.var) || !substitutable(in.var, 0, in.gamma)) return out;
      if (!cmp.less(in.alpha, in.beta)) return out;
      out.hypotheses = true;
      Term l = substitute(in.gamma, in.var, 0, in.alpha);
      Term r = substitute(in.gamma, in.var, 0, in.beta);
      out.conclusion = cmp.less(l, r);
      if (!out.conclusion) fail_detail(l, r, "<");
      return out;
    }
    case 2: {
      if (!(fc_max(0, in.delta) < Card(0)) || !(fc_max(0, in.gamma) < Card(0))) return out;
      // A body ignoring w is constant, and no strict inequality survives it.
      if (!mentions(in.gamma, in.w)) return out;
      // V(a) stands for a strongly critical term, so its replacement must
      // stay one for every argument; a bare w would send V(0) to 0.
      if (!in.gamma.is_sc() || in.gamma.head() == Head::Var) return out;
      if (!fsubstitutable(in.fvar, 0, in.alpha) || !fsubstitutable(in.fvar, 0, in.beta)) return out;
      if (!substitutable(in.w, 0, in.gamma)) return out;
      if (!llrel(cmp, in.delta, in.alpha, in.beta, in.w)) return out;
      out.hypotheses = true;
      Term l = fsubstitute(in.alpha, in.fvar, 0, in.gamma, in.w);
      Term r = fsubstitute(in.beta, in.fvar, 0, in.gamma, in.w);
      out.conclusion = cmp.less(l, r);
      if (!out.conclusion) fail_detail(l, r, "<");
      return out;
    }
    case 3: {
      if (!(fc_max(0, in.delta) < Card(0))) return out;
      if (has_fvar(in.alpha) || has_fvar(in.beta)) return out;
      if (!variables_below_top({in.alpha, in.beta})) return out;
      if (!llrel(cmp, in.delta, in.alpha, in.beta, in.w)) return out;
      out.hypotheses = true;
      Term l = dfun(0, in.delta, in.alpha, in.w);
      Term r = dfun(0, in.delta, in.beta, in.w);
      out.conclusion = llrel(cmp, zero(), l, r, in.w);
      if (!out.conclusion) fail_detail(l, r, "<<_0");
      return out;
    }
    case 4: {
      if (!(fc_max(0, in.delta) < Card(0))) return out;
      if (has_fvar(in.alpha) || mentions(in.beta, in.fvar) || has_fvar(in.beta)) return out;
      if (!fsubstitutable(in.fvar, 0, in.gamma) || !substitutable(in.w, 0, in.alpha)) return out;
      if (!llrel(cmp, in.delta, in.alpha, in.beta, in.w)) return out;
      if (!llrel(cmp, in.delta, in.gamma, in.beta, in.w)) return out;
      out.hypotheses = true;
      Term x = shift(dfun(0, in.delta, in.alpha, in.w), 0, -1);
      Term l = dfun(0, x, fsubstitute(in.gamma, in.fvar, 0, x, in.w), in.w);
      Term r = dfun(0, in.delta, in.beta, in.w);
      out.conclusion = llrel(cmp, zero(), l, r, in.w);
      if (!out.conclusion) fail_detail(l, r, "<<_0");
      return out;
    }
    default:
      throw PreconditionError("item in 1..4", std::to_string(in.item));
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

}  // namespace ordcalc::xi
