#include <chrono>
#include <random>

#include "ordcalc/buchholz.hpp"
#include "ordcalc/errors.hpp"
#include "ordcalc/harness.hpp"
#include "ordcalc/poly.hpp"
#include "ordcalc/syntax.hpp"
#include "ordcalc/xi.hpp"

namespace ordcalc::harness {

namespace {

using Rng = std::mt19937_64;
using Pool = std::vector<Term>;

std::uint64_t item_seed(std::uint64_t seed, SystemId s, int item) {
  // splitmix64 over (seed, system, item)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (1 + static_cast<std::uint64_t>(s) * 8 + item);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

const Term& pick(Rng& rng, const Pool& pool) {
  if (pool.empty()) throw InvariantError("empty sampling pool");
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

template <class Pred>
Pool filter(const Pool& pool, Pred&& p) {
  Pool out;
  for (const auto& t : pool) {
    if (p(t)) out.push_back(t);
  }
  return out;
}

Pool pool_of(SystemId s, std::size_t size, int level_or_subscript, std::vector<std::string> vars = {},
             std::vector<std::string> fvars = {}) {
  EnumBudget b;
  b.system = s;
  b.max_size = size;
  b.min_level = s == SystemId::Buchholz ? 0 : level_or_subscript;
  b.max_subscript = s == SystemId::Buchholz ? level_or_subscript : 1;
  b.closed_only = vars.empty() && fvars.empty();
  b.variables = std::move(vars);
  b.function_variables = std::move(fvars);
  return enumerate(b);
}

// Draws instances until `per_item` satisfy the hypotheses or the draw budget
// runs out, then evaluates starvation.
template <class Draw, class Eval, class Describe>
CheckReport run_item(SystemId system, int item, const LemmaOptions& opt, Draw&& draw, Eval&& eval,
                     Describe&& describe) {
  CheckReport rep;
  rep.check = "key_lemma." + std::to_string(item);
  rep.system = system;
  rep.seed = opt.seed;
  const auto start = std::chrono::steady_clock::now();
  Rng rng(item_seed(opt.seed, system, item));
  const std::size_t max_draws = opt.per_item * opt.max_draw_factor;
  while (rep.checked < opt.per_item && rep.attempted < max_draws) {
    auto inst = draw(rng);
    ++rep.attempted;
    try {
      LemmaOutcome o = eval(inst);
      if (!o.hypotheses) continue;
      ++rep.checked;
      if (!o.conclusion) rep.add_violation(describe(inst), "conclusion holds", o.detail);
    } catch (const Error& e) {
      ++rep.checked;
      rep.add_violation(describe(inst), "no error", e.what());
    }
  }
  if (rep.checked < opt.per_item || rep.checked * 10 < rep.attempted) {
    rep.add_violation("starvation", std::to_string(opt.per_item) + " instances at >= 10% acceptance",
                      std::to_string(rep.checked) + " of " + std::to_string(rep.attempted));
  }
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<CheckReport> buchholz_lemmas(const LemmaOptions& opt) {
  using namespace buchholz;
  const Pool closed = pool_of(SystemId::Buchholz, 5, 3);
  const Pool open = filter(pool_of(SystemId::Buchholz, 5, 3, {"x"}), [](const Term& t) { return !t.closed(); });
  std::vector<Pool> small_fc(4);
  for (int n = 1; n <= 3; ++n) {
    small_fc[n] = filter(closed, [n](const Term& t) { return fc(t).max < Card(n); });
  }
  std::vector<Pool> open_at(4);
  for (int n = 1; n <= 3; ++n) {
    open_at[n] = filter(open, [n](const Term& t) { return max_var_subscript(t) <= n; });
  }
  auto& cmp = shared_comparator();
  auto describe = [](const KeyLemmaInstance& i) {
    return "item=" + std::to_string(i.item) + " n=" + std::to_string(i.n) + " alpha=" + render(i.alpha) +
           " beta=" + render(i.beta) + " gamma=" + render(i.gamma) + " delta=" + render(i.delta);
  };
  auto eval = [&](const KeyLemmaInstance& i) { return key_lemma(cmp, i); };
  auto order = [&](KeyLemmaInstance& i) {
    if (cmp.less(i.beta, i.alpha)) std::swap(i.alpha, i.beta);
  };
  std::vector<CheckReport> out;
  out.push_back(run_item(SystemId::Buchholz, 1, opt, [&](Rng& rng) {
    KeyLemmaInstance i;
    i.item = 1;
    i.n = std::uniform_int_distribution<int>(1, 3)(rng);
    i.alpha = pick(rng, open_at[i.n]);
    i.beta = pick(rng, rng() % 4 == 0 ? closed : open_at[i.n]);
    if (rng() % 2) std::swap(i.alpha, i.beta);
    order(i);
    i.gamma = pick(rng, small_fc[i.n]);
    i.delta = zero();
    return i;
  }, eval, describe));
  for (int item = 2; item <= 3; ++item) {
    out.push_back(run_item(SystemId::Buchholz, item, opt, [&, item](Rng& rng) {
      KeyLemmaInstance i;
      i.item = item;
      i.n = std::uniform_int_distribution<int>(1, 3)(rng);
      i.alpha = pick(rng, closed);
      i.beta = pick(rng, closed);
      order(i);
      // Item 3 also needs gamma below beta; a larger beta makes that likelier.
      if (item == 3) {
        const Term& extra = pick(rng, closed);
        if (cmp.less(i.beta, extra)) i.beta = extra;
      }
      const int fit = item == 3 && i.n >= 2 ? i.n - 1 : i.n;
      i.delta = rng() % 3 == 0 ? zero() : pick(rng, small_fc[fit]);
      i.gamma = item == 3 ? pick(rng, open_at[i.n]) : zero();
      return i;
    }, eval, describe));
  }
  return out;
}

std::vector<CheckReport> poly_lemmas(const LemmaOptions& opt) {
  using namespace poly;
  const Pool closed = pool_of(SystemId::Poly, 5, -2);
  const Pool low = filter(closed, [](const Term& t) { return fc_max(0, t) < Card(0); });
  const Pool open = filter(pool_of(SystemId::Poly, 5, -2, {"x"}), [](const Term& t) {
    return !t.closed() && substitutable("x", 0, t);
  });
  auto& cmp = shared_comparator();
  auto describe = [](const KeyLemmaInstance& i) {
    return "item=" + std::to_string(i.item) + " alpha=" + render(i.alpha) + " beta=" + render(i.beta) +
           " gamma=" + render(i.gamma) + " delta=" + render(i.delta);
  };
  auto eval = [&](const KeyLemmaInstance& i) { return key_lemma(cmp, i); };
  auto order = [&](KeyLemmaInstance& i) {
    if (cmp.less(i.beta, i.alpha)) std::swap(i.alpha, i.beta);
  };
  std::vector<CheckReport> out;
  out.push_back(run_item(SystemId::Poly, 1, opt, [&](Rng& rng) {
    KeyLemmaInstance i;
    i.item = 1;
    i.alpha = pick(rng, open);
    i.beta = pick(rng, rng() % 4 == 0 ? closed : open);
    order(i);
    i.gamma = pick(rng, low);
    i.delta = zero();
    return i;
  }, eval, describe));
  for (int item = 2; item <= 3; ++item) {
    out.push_back(run_item(SystemId::Poly, item, opt, [&, item](Rng& rng) {
      KeyLemmaInstance i;
      i.item = item;
      i.alpha = pick(rng, closed);
      i.beta = pick(rng, closed);
      order(i);
      i.delta = rng() % 3 == 0 ? zero() : pick(rng, low);
      i.gamma = item == 3 ? pick(rng, open) : zero();
      return i;
    }, eval, describe));
  }
  return out;
}

bool has_fvar(const Term& t) {
  if (t.head() == Head::FVar) return true;
  for (const auto& c : t.children()) {
    if (has_fvar(c)) return true;
  }
  return false;
}

std::vector<CheckReport> xi_lemmas(const LemmaOptions& opt) {
  using namespace xi;
  const Pool closed = pool_of(SystemId::Xi, 5, -2);
  const Pool low = filter(closed, [](const Term& t) { return fc_max(0, t) < Card(0); });
  const Pool with_x = filter(pool_of(SystemId::Xi, 5, -2, {"x"}), [](const Term& t) {
    return !t.closed() && substitutable("x", 0, t);
  });
  const Pool with_w = filter(pool_of(SystemId::Xi, 4, -2, {"w"}), [](const Term& t) {
    return !t.closed() && substitutable("w", 0, t);
  });
  const Pool low_w = filter(with_w, [](const Term& t) {
    return fc_max(0, t) < Card(0) && t.is_sc() && t.head() != Head::Var;
  });
  const Pool deep_x = filter(pool_of(SystemId::Xi, 5, -2, {"x"}), [](const Term& t) {
    if (t.closed()) return false;
    for (int j = -1; j >= -8; --j) {
      if (substitutable("x", j, t)) return true;
    }
    return false;
  });
  const Pool with_f = filter(pool_of(SystemId::Xi, 5, -2, {}, {"F"}), [](const Term& t) {
    return has_fvar(t) && fsubstitutable("F", 0, t);
  });
  auto& cmp = shared_comparator();
  auto describe = [](const KeyLemmaInstance& i) {
    return "item=" + std::to_string(i.item) + " alpha=" + render(i.alpha) + " beta=" + render(i.beta) +
           " gamma=" + render(i.gamma) + " delta=" + render(i.delta);
  };
  auto eval = [&](const KeyLemmaInstance& i) { return key_lemma(cmp, i); };
  auto order = [&](KeyLemmaInstance& i) {
    if (cmp.less(i.beta, i.alpha)) std::swap(i.alpha, i.beta);
  };
  auto delta = [&](Rng& rng) { return rng() % 3 == 0 ? zero() : pick(rng, low); };
  std::vector<CheckReport> out;
  out.push_back(run_item(SystemId::Xi, 1, opt, [&](Rng& rng) {
    KeyLemmaInstance i;
    i.item = 1;
    i.alpha = pick(rng, closed);
    i.beta = pick(rng, closed);
    order(i);
    i.gamma = pick(rng, with_x);
    i.delta = zero();
    return i;
  }, eval, describe));
  out.push_back(run_item(SystemId::Xi, 2, opt, [&](Rng& rng) {
    KeyLemmaInstance i;
    i.item = 2;
    i.alpha = pick(rng, rng() % 3 == 0 ? closed : with_f);
    i.beta = pick(rng, rng() % 3 == 0 ? closed : with_f);
    order(i);
    i.gamma = pick(rng, low_w);
    i.delta = delta(rng);
    return i;
  }, eval, describe));
  out.push_back(run_item(SystemId::Xi, 3, opt, [&](Rng& rng) {
    KeyLemmaInstance i;
    i.item = 3;
    i.alpha = pick(rng, rng() % 2 ? closed : deep_x);
    i.beta = pick(rng, rng() % 2 ? closed : deep_x);
    order(i);
    i.delta = delta(rng);
    i.gamma = zero();
    return i;
  }, eval, describe));
  out.push_back(run_item(SystemId::Xi, 4, opt, [&](Rng& rng) {
    KeyLemmaInstance i;
    i.item = 4;
    i.alpha = pick(rng, rng() % 3 == 0 ? closed : with_w);
    i.beta = pick(rng, closed);
    order(i);
    // gamma must sit below beta as well, so favour a larger beta.
    for (int k = 0; k < 2; ++k) {
      const Term& extra = pick(rng, closed);
      if (cmp.less(i.beta, extra)) i.beta = extra;
    }
    i.gamma = pick(rng, rng() % 3 == 0 ? closed : with_f);
    i.delta = delta(rng);
    return i;
  }, eval, describe));
  return out;
}

}  // namespace

std::vector<CheckReport> check_key_lemmas(SystemId system, const LemmaOptions& options) {
  switch (system) {
    case SystemId::Buchholz: return buchholz_lemmas(options);
    case SystemId::Poly: return poly_lemmas(options);
    case SystemId::Xi: return xi_lemmas(options);
    case SystemId::Mixed:
      throw PreconditionError("system in {buchholz, poly, xi}", "the mixed system has no Key Lemma");
  }
  return {};
}

}  // namespace ordcalc::harness
