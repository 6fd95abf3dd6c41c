#include "ordcalc/mixed.hpp"

#include <algorithm>
#include <set>

#include "ordcalc/errors.hpp"
#include "ordcalc/syntax.hpp"

namespace ordcalc::mixed {

namespace {

constexpr SystemId kSys = SystemId::Mixed;

using Replacement = std::map<std::string, Term, std::less<>>;

MCard xi_card(int level) { return MCard::large(level, 0); }

Term relevel(const Term& t, int level) {
  return make_node(kSys, t.head(), level, t.index(), t.name(), {t.children().begin(), t.children().end()});
}

Term with_arg(const Term& t, Term arg) { return with_children(t, {std::move(arg)}); }

void require_large(MCard c) {
  if (!c.is_large()) throw PreconditionError("large threshold", c.to_string());
}

template <class F>
Term map_children(const Term& t, F&& f) {
  if (t.children().empty()) return t;
  std::vector<Term> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(f(c));
  return with_children(t, std::move(kids));
}

void collect_fc(MCard c, const Term& t, MCardSet& out) {
  switch (t.head()) {
    case Head::Omega:
      out.insert(MCard::low(t.index()));
      return;
    case Head::OmegaHigh:
      if (MCard::large(t.level(), t.index()) < c) {
        out.insert(MCard::large(level_minus(t.level(), c), t.index()));
      }
      return;
    case Head::Xi:
      if (xi_card(t.level()) < c) out.insert(xi_card(level_minus(t.level(), c)));
      collect_fc(card_minus(c, t.level()), t.arg(), out);
      return;
    case Head::Var:
      if (xi_card(t.level()) < c) out.insert(xi_card(level_minus(t.level(), c)));
      return;
    case Head::ThetaLow: {
      // The collapse is below Omega_n, so nothing at or above n survives.
      MCardSet inner;
      collect_fc(c, t.arg(), inner);
      for (auto v : inner.values) {
        if (v < MCard::low(t.index())) out.insert(v);
      }
      return;
    }
    case Head::ThetaHigh:
      collect_fc(card_min(c, t.index()), t.arg(), out);
      return;
    case Head::ThetaXi:
      collect_fc(card_minus(c, 1), t.arg(), out);
      return;
    default:
      for (const auto& ch : t.children()) collect_fc(c, ch, out);
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
    case Head::ThetaLow:
    case Head::Var:
    case Head::Omega:
    case Head::OmegaHigh:
      return t;
    case Head::ThetaXi:
      return with_arg(t, abstract_rec(t.arg(), level - 1, st));
    default:
      return map_children(t, [&](const Term& c) { return abstract_rec(c, level, st); });
  }
}

void collect_low(int n, const Term& t, std::vector<Term>& out) {
  switch (t.head()) {
    case Head::Omega:
      if (t.index() < n) out.push_back(t);
      return;
    case Head::OmegaHigh:
    case Head::Xi:
    case Head::Var:
      return;
    case Head::ThetaLow:
      if (t.index() <= n) {
        out.push_back(t);
      } else {
        collect_low(n, t.arg(), out);
      }
      return;
    default:
      for (const auto& c : t.children()) collect_low(n, c, out);
  }
}

void collect_high(MCard c, int n, const Term& t, std::vector<Term>& out) {
  const int back = -c.level();
  switch (t.head()) {
    case Head::Omega:
    case Head::ThetaLow:
      out.push_back(t);
      return;
    case Head::OmegaHigh:
      if (MCard::large(t.level(), t.index()) < c) out.push_back(relevel(t, t.level() + back));
      return;
    case Head::Xi:
      if (xi_card(t.level()) < c) {
        out.push_back(relevel(t, t.level() + back));
      } else {
        collect_high(card_minus(c, t.level()), n, t.arg(), out);
      }
      return;
    case Head::Var:
      if (xi_card(t.level()) < card_min(c, n)) out.push_back(relevel(t, t.level() + back));
      return;
    case Head::ThetaHigh:
      if (fc_max(kTop, t) < card_min(c, n)) {
        out.push_back(shift(t, kTop, back));
      } else {
        collect_high(card_min(c, n), n, t.arg(), out);
      }
      return;
    case Head::ThetaXi:
      if (fc_max(kTop, t) < card_min(c, n)) {
        out.push_back(shift(t, kTop, back));
      } else {
        collect_high(card_minus(c, 1), n, t.arg(), out);
      }
      return;
    default:
      for (const auto& ch : t.children()) collect_high(c, n, ch, out);
  }
}

// Elements are re-expressed one level up: the body being searched sits under
// the Xi collapse that is being compared.
void collect_xi(MCard c, const Term& t, std::vector<Critical>& out) {
  const int back = 1 - c.level();
  switch (t.head()) {
    case Head::Omega:
    case Head::ThetaLow:
      out.push_back({t, {}});
      return;
    case Head::OmegaHigh:
      if (MCard::large(t.level(), t.index()) < c) out.push_back({relevel(t, t.level() + back), {}});
      return;
    case Head::Xi:
      if (xi_card(t.level()) < c) {
        out.push_back({relevel(t, t.level() + back), {}});
      } else {
        collect_xi(card_minus(c, t.level()), t.arg(), out);
      }
      return;
    case Head::Var:
      if (xi_card(t.level()) < c) out.push_back({relevel(t, t.level() + back), {}});
      return;
    case Head::ThetaHigh:
      if (fc_max(kTop, t) < card_minus(c, 1)) {
        out.push_back({shift(t, kTop, back), {}});
      } else {
        collect_xi(card_min(c, t.index()), t.arg(), out);
      }
      return;
    case Head::ThetaXi:
      if (fc_max(kTop, t) <= MCard::large(c.level(), 0)) {
        Abstraction a = abstract(shift(t, kTop, -c.level()));
        std::vector<std::string> holes = a.variables;
        std::sort(holes.begin(), holes.end());
        out.push_back({shift(a.body, kTop, 1), std::move(holes)});
      } else {
        collect_xi(card_minus(c, 1), t.arg(), out);
      }
      return;
    default:
      for (const auto& ch : t.children()) collect_xi(c, ch, out);
  }
}

Term fill_zero(const Critical& c) {
  if (c.holes.empty()) return c.term;
  Replacement r;
  for (const auto& h : c.holes) r.emplace(h, zero());
  return substitute_all(c.term, r, 0);
}

bool is_cardinal(Head h) {
  return h == Head::Omega || h == Head::OmegaHigh || h == Head::Xi || h == Head::Var;
}

// Collapses rank by the cardinal they collapse: Omega_n < Xi < Omega_{Omega+m}.
std::pair<int, int> collapse_rank(const Term& t) {
  switch (t.head()) {
    case Head::ThetaLow: return {0, t.index()};
    case Head::ThetaXi: return {1, 0};
    default: return {2, t.index()};
  }
}

bool less_cardinal(const Term& a, const Term& b, Comparator& cmp) {
  const Head ha = a.head();
  const Head hb = b.head();
  switch (ha) {
    case Head::Omega:
      return hb != Head::Omega || a.index() < b.index();
    case Head::OmegaHigh:
      if (hb == Head::OmegaHigh) {
        return a.level() < b.level() || (a.level() == b.level() && a.index() < b.index());
      }
      return hb == Head::Xi && a.level() < b.level();
    case Head::Xi:
      if (hb == Head::OmegaHigh) return a.level() <= b.level();
      if (hb == Head::Xi) {
        return a.level() < b.level() || (a.level() == b.level() && cmp.less(a.arg(), b.arg()));
      }
      return false;
    case Head::Var:
      return (hb == Head::Xi || hb == Head::OmegaHigh) && a.level() <= b.level();
    default:
      return false;
  }
}

}  // namespace

Term zero() { return ordcalc::zero(kSys); }

Term omega(int n) {
  if (n < 1) throw ConstructionError("Omega subscript must be >= 1");
  return make_node(kSys, Head::Omega, 0, n, {}, {});
}

Term omega_high(int level, int n) {
  if (n < 1) throw ConstructionError("upper Omega subscript must be >= 1");
  if (level > 0) throw ConstructionError("upper Omega level must be <= 0");
  return make_node(kSys, Head::OmegaHigh, level, n, {}, {});
}

Term xi(int level, const Term& arg) {
  if (level > 0) throw ConstructionError("Xi level must be <= 0");
  if (!arg.valid() || arg.system() != kSys) throw ConstructionError("expected a mixed term");
  return make_node(kSys, Head::Xi, level, 0, {}, {arg});
}

Term theta_low(int n, const Term& body) {
  if (n < 1) throw ConstructionError("collapse subscript must be >= 1");
  if (!body.valid() || body.system() != kSys) throw ConstructionError("expected a mixed term");
  return make_node(kSys, Head::ThetaLow, 0, n, {}, {body});
}

Term theta_high(int n, const Term& body) {
  if (n < 1) throw ConstructionError("collapse subscript must be >= 1");
  if (!body.valid() || body.system() != kSys) throw ConstructionError("expected a mixed term");
  return make_node(kSys, Head::ThetaHigh, 0, n, {}, {body});
}

Term theta_xi(const Term& body) {
  if (!body.valid() || body.system() != kSys) throw ConstructionError("expected a mixed term");
  return make_node(kSys, Head::ThetaXi, 0, 0, {}, {body});
}

Term var(std::string name, int level) {
  if (level > 0) throw ConstructionError("variable level must be <= 0");
  return make_node(kSys, Head::Var, level, 0, std::move(name), {});
}

MCardSet fc(MCard c, const Term& t) {
  require_large(c);
  MCardSet out;
  collect_fc(c, t, out);
  return out;
}

MCard fc_max(MCard c, const Term& t) { return fc(c, t).max(); }

Term shift(const Term& t, MCard c, int d) {
  require_large(c);
  if (d == 0) return t;
  auto collide = [&](const Term& x) {
    throw ShiftError("shifting " + render(x) + " by " + std::to_string(d) + " below " + c.to_string() +
                     " collides");
  };
  switch (t.head()) {
    case Head::Omega:
    case Head::ThetaLow:
      return t;
    case Head::OmegaHigh: {
      if (!(MCard::large(t.level(), t.index()) < c)) return t;
      const int moved = t.level() + d;
      if (moved > 0) collide(t);
      return relevel(t, moved);
    }
    case Head::Xi: {
      if (!(xi_card(t.level()) < c)) return with_arg(t, shift(t.arg(), card_minus(c, t.level()), d));
      const int moved = t.level() + d;
      if (moved > 0) collide(t);
      return relevel(t, moved);
    }
    case Head::Var: {
      if (!(xi_card(t.level()) < c)) return t;
      const int moved = t.level() + d;
      if (moved > 0) collide(t);
      return relevel(t, moved);
    }
    case Head::ThetaHigh:
      return with_arg(t, shift(t.arg(), card_min(c, t.index()), d));
    case Head::ThetaXi:
      return with_arg(t, shift(t.arg(), card_minus(c, 1), d));
    default:
      return map_children(t, [&](const Term& x) { return shift(x, c, d); });
  }
}

bool substitutable(std::string_view name, int level, const Term& t) {
  switch (t.head()) {
    case Head::Var:
      return t.name() != name || t.level() == level;
    case Head::Xi:
      return !mentions(t.arg(), name) ||
             (level <= t.level() && substitutable(name, level - t.level(), t.arg()));
    case Head::ThetaLow:
      return true;
    case Head::ThetaXi:
      return substitutable(name, level - 1, t.arg());
    default:
      for (const auto& c : t.children()) {
        if (!substitutable(name, level, c)) return false;
      }
      return true;
  }
}

Term substitute_all(const Term& t, const Replacement& repl, int level) {
  if (t.closed()) return t;
  switch (t.head()) {
    case Head::Var: {
      auto it = repl.find(t.name());
      return it == repl.end() ? t : shift(it->second, kTop, level);
    }
    case Head::Xi:
      if (level <= t.level()) return with_arg(t, substitute_all(t.arg(), repl, level - t.level()));
      return t;
    case Head::ThetaLow:
      return t;
    case Head::ThetaXi:
      return with_arg(t, substitute_all(t.arg(), repl, level - 1));
    default:
      return map_children(t, [&](const Term& x) { return substitute_all(x, repl, level); });
  }
}

Term substitute(const Term& t, std::string_view name, int level, const Term& beta) {
  if (!substitutable(name, level, t)) {
    throw PreconditionError("substitutable", std::string(name) + " is not " + std::to_string(level) +
                                                 "-substitutable in " + render(t));
  }
  return substitute_all(t, Replacement{{std::string(name), beta}}, level);
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

std::vector<Term> kset_low(int n, const Term& t) {
  if (n < 1) throw PreconditionError("n >= 1", std::to_string(n));
  std::vector<Term> out;
  collect_low(n, t, out);
  sort_unique(out);
  return out;
}

std::vector<Term> kset_high(MCard c, int n, const Term& t) {
  require_large(c);
  if (n < 1) throw PreconditionError("n >= 1", std::to_string(n));
  std::vector<Term> out;
  try {
    collect_high(c, n, t, out);
  } catch (const ShiftError& e) {
    throw InvariantError(std::string("critical subterm shift failed: ") + e.what());
  }
  sort_unique(out);
  return out;
}

std::vector<Critical> kset_xi(MCard c, const Term& t) {
  require_large(c);
  std::vector<Critical> out;
  try {
    collect_xi(c, t, out);
  } catch (const ShiftError& e) {
    throw InvariantError(std::string("critical subterm shift failed: ") + e.what());
  }
  std::sort(out.begin(), out.end(), [](const Critical& a, const Critical& b) {
    if (auto k = structural_compare(a.term, b.term); k != 0) return k < 0;
    return a.holes < b.holes;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Critical> Comparator::k_xi(const Term& body) {
  if (mode() == EvalMode::Reference) return kset_xi(MCard::large(0, 0), body);
  if (auto it = kcache_.find(body); it != kcache_.end()) return it->second;
  auto r = kset_xi(MCard::large(0, 0), body);
  kcache_.emplace(body, r);
  return r;
}

std::vector<Term> Comparator::own_critical(const Term& collapse) {
  auto compute = [&] {
    const Term& body = collapse.arg();
    switch (collapse.head()) {
      case Head::ThetaLow:
        return kset_low(collapse.index(), body);
      case Head::ThetaHigh:
        return kset_high(MCard::large(0, collapse.index()), collapse.index(), body);
      default: {
        std::vector<Term> out;
        for (const auto& c : k_xi(body)) {
          out.push_back(fill_zero(c));
        }
        sort_unique(out);
        return out;
      }
    }
  };
  if (mode() == EvalMode::Reference) return compute();
  if (auto it = owncache_.find(collapse); it != owncache_.end()) return it->second;
  auto r = compute();
  owncache_.emplace(collapse, r);
  return r;
}

CriticalSets critical_sets(Comparator& cmp, const Term& a, const Term& b) {
  if (!a.is_collapse() || !b.is_collapse()) throw PreconditionError("collapse heads", render(a) + ", " + render(b));
  // A Xi collapse's critical functions are read at 0 on both sides, as
  // against a cardinal: the other side's parameters sit a frame too low.
  return {cmp.own_critical(a), cmp.own_critical(b)};
}

bool Comparator::less_sc(const Term& a, const Term& b) {
  const bool ca = is_cardinal(a.head());
  const bool cb = is_cardinal(b.head());
  if (ca && cb) return less_cardinal(a, b, *this);
  if (ca) {
    for (const auto& g : own_critical(b)) {
      if (leq(a, g)) return true;
    }
    return false;
  }
  if (cb) {
    for (const auto& g : own_critical(a)) {
      if (!less(g, b)) return false;
    }
    return true;
  }
  const auto sets = critical_sets(*this, a, b);
  for (const auto& dl : sets.d) {
    if (leq(a, dl)) return true;
  }
  const auto ra = collapse_rank(a);
  const auto rb = collapse_rank(b);
  if (!(ra < rb || (ra == rb && less(a.arg(), b.arg())))) return false;
  for (const auto& cl : sets.c) {
    if (!less(cl, b)) return false;
  }
  return true;
}

Comparator& shared_comparator() {
  thread_local Comparator cmp(EvalMode::Memoized);
  return cmp;
}

Cmp compare(const Term& a, const Term& b) {
  if (!a.valid() || !b.valid() || a.system() != kSys || b.system() != kSys) {
    throw ConstructionError("expected mixed terms");
  }
  return shared_comparator().compare(a, b);
}

}  // namespace ordcalc::mixed
