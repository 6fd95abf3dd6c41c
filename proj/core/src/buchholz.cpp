#include "ordcalc/buchholz.hpp"

#include <algorithm>
#include <chrono>

#include "ordcalc/errors.hpp"
#include "ordcalc/syntax.hpp"

namespace ordcalc::buchholz {

namespace {

constexpr SystemId kSys = SystemId::Buchholz;

void require_system(const Term& t) {
  if (!t.valid() || t.system() != kSys) {
    throw ConstructionError("expected a buchholz term");
  }
}

// Largest variable subscript reachable without passing a theta, per theta
// body: the scope rule is checked bottom up.
bool scope_ok(const Term& t, int& max_var) {
  max_var = 0;
  switch (t.head()) {
    case Head::Var:
      max_var = t.index();
      return true;
    case Head::Omega:
      return true;
    default:
      break;
  }
  for (const auto& c : t.children()) {
    int inner = 0;
    if (!scope_ok(c, inner)) return false;
    max_var = std::max(max_var, inner);
  }
  if (t.head() == Head::Theta && max_var >= t.index()) return false;
  return true;
}

void collect_fc(const Term& t, CardSet& out) {
  switch (t.head()) {
    case Head::Omega:
    case Head::Var:
      out.insert(Card(t.index()));
      return;
    case Head::Theta: {
      CardSet inner;
      collect_fc(t.arg(), inner);
      for (auto c : inner.values) {
        if (c.value() < t.index()) out.insert(c);
      }
      return;
    }
    default:
      for (const auto& c : t.children()) collect_fc(c, out);
  }
}

void collect_k(int n, const Term& t, std::vector<Term>& out) {
  switch (t.head()) {
    case Head::Omega:
    case Head::Var:
      if (t.index() < n) out.push_back(t);
      return;
    case Head::Theta:
      if (n < t.index()) {
        collect_k(n, t.arg(), out);
      } else {
        out.push_back(t);
      }
      return;
    default:
      for (const auto& c : t.children()) collect_k(n, c, out);
  }
}

Term omega_plus(int n, const Term& beta) { return natural_sum(omega(n), beta); }

Term d_top(int n, const Term& gamma, const Term& beta) {
  return theta(n, natural_sum(omega_pow(omega_plus(n, beta)), gamma));
}

}  // namespace

Term zero() { return ordcalc::zero(kSys); }

Term omega(int n) {
  if (n < 1) throw ConstructionError("Omega subscript must be >= 1");
  return make_node(kSys, Head::Omega, 0, n, {}, {});
}

Term theta(int n, const Term& body) {
  if (n < 1) throw ConstructionError("theta subscript must be >= 1");
  require_system(body);
  return make_node(kSys, Head::Theta, 0, n, {}, {body});
}

Term var(std::string name, int n) {
  if (n < 1) throw ConstructionError("variable subscript must be >= 1");
  return make_node(kSys, Head::Var, 0, n, std::move(name), {});
}

Classification classify(const Term& t) {
  Classification c;
  c.is_h = t.is_h();
  c.is_sc = t.is_sc();
  c.is_closed = t.closed();
  int unused = 0;
  c.is_valid = scope_ok(t, unused);
  return c;
}

FcResult fc(const Term& t) {
  FcResult r;
  collect_fc(t, r.set);
  r.max = r.set.max();
  return r;
}

int max_var_subscript(const Term& t) {
  if (t.head() == Head::Var) return t.index();
  int m = 0;
  for (const auto& c : t.children()) m = std::max(m, max_var_subscript(c));
  return m;
}

std::vector<Term> kset(int n, const Term& t) {
  std::vector<Term> out;
  collect_k(n, t, out);
  sort_unique(out);
  return out;
}

std::vector<Term> Comparator::k(int n, const Term& t) {
  if (mode() == EvalMode::Reference) return kset(n, t);
  auto key = std::make_pair(n, structural_key(t));
  if (auto it = kcache_.find(key); it != kcache_.end()) return it->second;
  auto r = kset(n, t);
  kcache_.emplace(std::move(key), r);
  return r;
}

bool Comparator::less_sc(const Term& a, const Term& b) {
  const Head ha = a.head();
  const Head hb = b.head();
  if (ha == Head::Var || hb == Head::Var) {
    return ha == Head::Var && hb == Head::Omega && a.index() <= b.index();
  }
  if (ha == Head::Omega && hb == Head::Omega) return a.index() < b.index();
  if (ha == Head::Omega) {
    for (const auto& g : k(b.index(), b.arg())) {
      if (leq(a, g)) return true;
    }
    return false;
  }
  if (hb == Head::Omega) {
    for (const auto& g : k(a.index(), a.arg())) {
      if (!less(g, b)) return false;
    }
    return true;
  }
  const int m = a.index();
  const int n = b.index();
  for (const auto& g : k(n, b.arg())) {
    if (leq(a, g)) return true;
  }
  if (!(m < n || (m == n && less(a.arg(), b.arg())))) return false;
  for (const auto& g : k(m, a.arg())) {
    if (!less(g, b)) return false;
  }
  return true;
}

Comparator& shared_comparator() {
  thread_local Comparator cmp(EvalMode::Memoized);
  return cmp;
}

Cmp compare(const Term& a, const Term& b) {
  require_system(a);
  require_system(b);
  if (!classify(a).is_valid || !classify(b).is_valid) {
    throw PreconditionError("valid term", "a theta body mentions a variable at or above its subscript");
  }
  return shared_comparator().compare(a, b);
}

Term substitute(const Term& t, std::string_view name, int n, const Term& gamma) {
  if (!(fc(gamma).max < Card(n))) {
    throw PreconditionError("fc(gamma) < n", "replacement has formal cardinality " +
                                                  fc(gamma).max.to_string() + ", subscript is " +
                                                  std::to_string(n));
  }
  if (t.head() == Head::Var) {
    return (t.index() == n && t.name() == name) ? gamma : t;
  }
  if (t.children().empty() || !mentions(t, name)) return t;
  std::vector<Term> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(substitute(c, name, n, gamma));
  return with_children(t, std::move(kids));
}

Term dfun(int m, int n, const Term& gamma, const Term& beta) {
  if (m < 1 || m > n) throw PreconditionError("1 <= m <= n", "m=" + std::to_string(m) + " n=" + std::to_string(n));
  if (!(fc(gamma).max < Card(n))) {
    throw PreconditionError("fc(gamma) < n", render(gamma));
  }
  Term inner = d_top(n, gamma, beta);
  for (int i = n - 1; i >= m; --i) inner = d_top(i, zero(), inner);
  return inner;
}

bool llrel(Comparator& cmp, int n, const Term& gamma, const Term& alpha, const Term& beta,
           BoundReading reading) {
  if (n == 0) return cmp.less(alpha, beta);
  if (!(fc(gamma).max < Card(n))) throw PreconditionError("fc(gamma) < n", render(gamma));
  if (!cmp.less(alpha, beta)) return false;
  const Term& g = reading == BoundReading::Relativized ? gamma : zero();
  // D_{m,g} beta for m = n down to 1, each built from the one above.
  Term bound = d_top(n, g, beta);
  for (int m = n; m >= 1; --m) {
    if (m < n) bound = d_top(m, zero(), bound);
    for (const auto& eta : cmp.k(m, alpha)) {
      if (!cmp.less(eta, bound)) return false;
    }
  }
  return true;
}

bool llrel(int n, const Term& gamma, const Term& alpha, const Term& beta, BoundReading reading) {
  return llrel(shared_comparator(), n, gamma, alpha, beta, reading);
}

LemmaOutcome key_lemma(Comparator& cmp, const KeyLemmaInstance& in, BoundReading reading) {
  LemmaOutcome out;
  const int n = in.n;
  auto no_var_at_least = [](const Term& t, int bound) { return max_var_subscript(t) < bound; };
  switch (in.item) {
    case 1: {
      // Variables denote strongly critical terms, so only those may replace them.
      if (!in.gamma.is_sc() || !(fc(in.gamma).max < Card(n))) return out;
      if (!classify(in.alpha).is_valid || !classify(in.beta).is_valid) return out;
      if (!cmp.less(in.alpha, in.beta)) return out;
      out.hypotheses = true;
      Term a = substitute(in.alpha, in.var, n, in.gamma);
      Term b = substitute(in.beta, in.var, n, in.gamma);
      out.conclusion = cmp.less(a, b);
      if (!out.conclusion) out.detail = render(a) + " vs " + render(b) + " gave " + std::string(to_string(cmp.compare(a, b)));
      return out;
    }
    case 2: {
      if (n < 1 || !(fc(in.delta).max < Card(n))) return out;
      if (!no_var_at_least(in.alpha, n) || !no_var_at_least(in.beta, n)) return out;
      if (!llrel(cmp, n, in.delta, in.alpha, in.beta, reading)) return out;
      out.hypotheses = true;
      Term da = dfun(n, n, in.delta, in.alpha);
      Term db = dfun(n, n, in.delta, in.beta);
      out.conclusion = llrel(cmp, n - 1, zero(), da, db, reading);
      if (!out.conclusion) out.detail = render(da) + " not <<^" + std::to_string(n - 1) + "_0 " + render(db);
      return out;
    }
    case 3: {
      if (n < 1 || !(fc(in.delta).max < Card(n))) return out;
      // The conclusion's relation is only defined when delta also fits below n-1.
      if (n >= 2 && !(fc(in.delta).max < Card(n - 1))) return out;
      if (!no_var_at_least(in.alpha, n) || !no_var_at_least(in.beta, n)) return out;
      if (!no_var_at_least(in.gamma, n + 1)) return out;
      if (!llrel(cmp, n, in.delta, in.alpha, in.beta, reading)) return out;
      if (!llrel(cmp, n, in.delta, in.gamma, in.beta, reading)) return out;
      out.hypotheses = true;
      Term da = dfun(n, n, in.delta, in.alpha);
      Term lhs = dfun(n, n, da, substitute(in.gamma, in.var, n, da));
      Term rhs = dfun(n, n, in.delta, in.beta);
      out.conclusion = llrel(cmp, n - 1, in.delta, lhs, rhs, reading);
      if (!out.conclusion) out.detail = render(lhs) + " not <<^" + std::to_string(n - 1) + " " + render(rhs);
      return out;
    }
    default:
      throw PreconditionError("item in 1..3", std::to_string(in.item));
  }
}

CheckReport check_key_lemma(const std::vector<KeyLemmaInstance>& sample, BoundReading reading) {
  CheckReport rep;
  rep.check = "key_lemma";
  rep.system = kSys;
  const auto start = std::chrono::steady_clock::now();
  Comparator& cmp = shared_comparator();
  auto describe = [](const KeyLemmaInstance& i) {
    return "item=" + std::to_string(i.item) + " n=" + std::to_string(i.n) + " alpha=" + render(i.alpha) +
           " beta=" + render(i.beta) + " gamma=" + render(i.gamma) + " delta=" + render(i.delta);
  };
  for (const auto& inst : sample) {
    ++rep.attempted;
    try {
      auto o = key_lemma(cmp, inst, reading);
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

}  // namespace ordcalc::buchholz
