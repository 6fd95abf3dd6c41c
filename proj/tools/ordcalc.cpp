#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordcalc/buchholz.hpp"
#include "ordcalc/errors.hpp"
#include "ordcalc/harness.hpp"
#include "ordcalc/mixed.hpp"
#include "ordcalc/poly.hpp"
#include "ordcalc/syntax.hpp"
#include "ordcalc/xi.hpp"

using namespace ordcalc;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kPrecondition = 2, kInvariant = 3, kViolations = 4 };

struct Options {
  std::string system = "buchholz";
  std::optional<int> level;
  std::optional<int> index;
  int m = 0;
  int by = 1;
  std::string family = "xi";
  std::size_t size = 4;
  bool open = false;
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::vector<int> criteria;
  std::size_t per_item = 10'000;
  std::vector<std::string> args;
};

// A usage mistake detected after CLI11 accepted the flags.
struct UsageError : Error {
  using Error::Error;
};

std::string set_text(const std::vector<std::string>& items) {
  std::string s = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ", ";
    s += items[i];
  }
  return s + "}";
}

std::vector<std::string> rendered(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(render(t));
  return out;
}

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {
    if (!parse_system(o.system, sys_)) throw UsageError("unknown system '" + o.system + "'");
  }

  int run(const std::string& cmd) {
    if (cmd == "parse") return emit_term(term(0, 1));
    if (cmd == "cmp") return cmp();
    if (cmd == "sort") return sort();
    if (cmd == "k") return k();
    if (cmd == "fc") return fc();
    if (cmd == "ground" || cmd == "star") return normal(cmd);
    if (cmd == "shift") return shift();
    if (cmd == "subst") return subst();
    if (cmd == "abstract") return abstract();
    if (cmd == "kappa") return kappa();
    if (cmd == "d") return dfun();
    if (cmd == "ll") return ll();
    if (cmd == "enumerate") return enumerate();
    if (cmd == "selfcheck") return selfcheck();
    throw UsageError("unknown command '" + cmd + "'");
  }

 private:
  void arity(std::size_t n) const {
    if (o_.args.size() != n) {
      throw UsageError("expected " + std::to_string(n) + " argument(s), got " + std::to_string(o_.args.size()));
    }
  }

  Term term(std::size_t i, std::size_t n) const {
    arity(n);
    return parse(sys_, o_.args[i]);
  }

  void only(std::initializer_list<SystemId> allowed, const char* what) const {
    if (std::find(allowed.begin(), allowed.end(), sys_) == allowed.end()) {
      throw UsageError(std::string(what) + " is not available for system " + std::string(to_string(sys_)));
    }
  }

  int level() const { return o_.level.value_or(0); }

  int index() const {
    if (!o_.index) throw UsageError("--index is required for system " + std::string(to_string(sys_)));
    return *o_.index;
  }

  MCard threshold() const {
    return o_.index ? MCard::large(level(), *o_.index) : MCard::large(level(), MCard::kInfinity);
  }

  int emit(const std::string& text, const json& j) const {
    if (o_.json) {
      std::cout << j.dump() << "\n";
    } else {
      std::cout << text << "\n";
    }
    return kOk;
  }

  int emit_term(const Term& t) const { return emit(render(t), json{{"term", render(t)}}); }

  int emit_set(const std::vector<std::string>& items) const { return emit(set_text(items), json(items)); }

  int cmp() const {
    arity(2);
    const Term a = parse(sys_, o_.args[0]);
    const Term b = parse(sys_, o_.args[1]);
    const std::string r(to_string(harness::compare(sys_, a, b)));
    return emit(r, json{{"result", r}});
  }

  int sort() const {
    std::vector<Term> ts;
    for (const auto& a : o_.args) ts.push_back(parse(sys_, a));
    std::stable_sort(ts.begin(), ts.end(), [&](const Term& a, const Term& b) { return harness::less(sys_, a, b); });
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      if (harness::compare(sys_, ts[i], ts[i + 1]) == Cmp::Incomparable) {
        throw PreconditionError("pairwise comparable inputs", render(ts[i]) + " , " + render(ts[i + 1]));
      }
    }
    if (o_.json) return emit("", json(rendered(ts)));
    for (const auto& t : ts) std::cout << render(t) << "\n";
    return kOk;
  }

  int k() const {
    const Term t = term(0, 1);
    switch (sys_) {
      case SystemId::Buchholz:
        return emit_set(rendered(buchholz::kset(index(), t)));
      case SystemId::Poly:
        return emit_set(rendered(poly::kset(level(), t)));
      case SystemId::Xi: {
        std::vector<std::string> items;
        for (const auto& c : xi::kset(level(), t)) items.push_back(render(c.term));
        return emit_set(items);
      }
      case SystemId::Mixed: {
        if (o_.family == "low") return emit_set(rendered(mixed::kset_low(index(), t)));
        if (o_.family == "high") {
          return emit_set(rendered(mixed::kset_high(MCard::large(level(), MCard::kInfinity), index(), t)));
        }
        if (o_.family != "xi") throw UsageError("--family must be low, high or xi");
        std::vector<std::string> items;
        for (const auto& c : mixed::kset_xi(threshold(), t)) items.push_back(render(c.term));
        return emit_set(items);
      }
    }
    return kOk;
  }

  template <class Set>
  int emit_cards(const Set& set, const std::string& max) const {
    std::vector<std::string> items;
    for (const auto& c : set.values) items.push_back(c.to_string());
    return emit(set_text(items) + " max " + max, json{{"set", items}, {"max", max}});
  }

  int fc() const {
    const Term t = term(0, 1);
    switch (sys_) {
      case SystemId::Buchholz: {
        const auto r = buchholz::fc(t);
        return emit_cards(r.set, r.max.to_string());
      }
      case SystemId::Poly:
        return emit_cards(poly::fc(level(), t), poly::fc_max(level(), t).to_string());
      case SystemId::Xi:
        return emit_cards(xi::fc(level(), t), xi::fc_max(level(), t).to_string());
      case SystemId::Mixed: {
        const auto set = mixed::fc(threshold(), t);
        return emit_cards(set, set.max().to_string());
      }
    }
    return kOk;
  }

  int normal(const std::string& cmd) const {
    only({SystemId::Poly}, cmd.c_str());
    const Term t = term(0, 1);
    if (cmd == "star") return emit_term(poly::star(t));
    const std::string g = poly::ground(t).to_string();
    return emit(g, json{{"ground", g}});
  }

  int shift() const {
    only({SystemId::Poly, SystemId::Xi, SystemId::Mixed}, "shift");
    const Term t = term(0, 1);
    switch (sys_) {
      case SystemId::Poly: return emit_term(poly::shift(t, level(), o_.by));
      case SystemId::Xi: return emit_term(xi::shift(t, level(), o_.by));
      default: return emit_term(mixed::shift(t, threshold(), o_.by));
    }
  }

  int subst() const {
    arity(3);
    const Term t = parse(sys_, o_.args[0]);
    const std::string& v = o_.args[1];
    const Term b = parse(sys_, o_.args[2]);
    switch (sys_) {
      case SystemId::Buchholz: return emit_term(buchholz::substitute(t, v, index(), b));
      case SystemId::Poly: return emit_term(poly::substitute(t, v, level(), b));
      case SystemId::Xi: return emit_term(xi::substitute(t, v, level(), b));
      case SystemId::Mixed: return emit_term(mixed::substitute(t, v, level(), b));
    }
    return kOk;
  }

  template <class A>
  int emit_abstraction(const A& a) const {
    json params = json::object();
    std::string text = render(a.body);
    for (std::size_t i = 0; i < a.variables.size(); ++i) {
      params[a.variables[i]] = render(a.parameters[i]);
      text += (i ? ", " : " where ") + a.variables[i] + " = " + render(a.parameters[i]);
    }
    return emit(text, json{{"body", render(a.body)}, {"parameters", params}});
  }

  int abstract() const {
    only({SystemId::Xi, SystemId::Mixed}, "abstract");
    const Term t = term(0, 1);
    if (sys_ == SystemId::Xi) return emit_abstraction(xi::abstract(t));
    return emit_abstraction(mixed::abstract(t));
  }

  int kappa() const {
    only({SystemId::Xi}, "kappa");
    const auto r = xi::kappa(term(0, 1));
    const std::string s = r ? render(*r) : "-inf";
    return emit(s, json{{"kappa", s}});
  }

  int dfun() const {
    only({SystemId::Buchholz, SystemId::Poly, SystemId::Xi}, "d");
    arity(2);
    const Term g = parse(sys_, o_.args[0]);
    const Term b = parse(sys_, o_.args[1]);
    switch (sys_) {
      case SystemId::Buchholz: {
        const int n = index();
        return emit_term(buchholz::dfun(o_.m == 0 ? n : o_.m, n, g, b));
      }
      case SystemId::Poly: return emit_term(poly::dfun(o_.m, g, b));
      default: return emit_term(xi::dfun(o_.m, g, b));
    }
  }

  int ll() const {
    only({SystemId::Buchholz, SystemId::Poly, SystemId::Xi}, "ll");
    arity(3);
    const Term g = parse(sys_, o_.args[0]);
    const Term a = parse(sys_, o_.args[1]);
    const Term b = parse(sys_, o_.args[2]);
    bool r = false;
    switch (sys_) {
      case SystemId::Buchholz: r = buchholz::llrel(index(), g, a, b); break;
      case SystemId::Poly: r = poly::llrel(g, a, b); break;
      default: r = xi::llrel(g, a, b); break;
    }
    return emit(r ? "true" : "false", json{{"result", r}});
  }

  int enumerate() const {
    arity(0);
    harness::EnumBudget b;
    b.system = sys_;
    b.max_size = o_.size;
    b.min_level = o_.level.value_or(-1);
    b.max_subscript = o_.index.value_or(1);
    b.closed_only = !o_.open;
    if (o_.open && sys_ == SystemId::Xi) b.function_variables = {"F"};
    const auto ts = harness::enumerate(b);
    if (o_.json) return emit("", json(rendered(ts)));
    for (const auto& t : ts) std::cout << render(t) << "\n";
    return kOk;
  }

  int selfcheck() const {
    arity(0);
    harness::AcceptanceBudget b;
    b.seed = seed();
    b.only = o_.criteria;
    b.lemmas.per_item = o_.per_item;
    bool ok = true;
    harness::run_acceptance(b, [&](const harness::CriterionResult& r) {
      ok = ok && r.passed();
      if (o_.json) {
        for (const auto& rep : r.reports) std::cout << harness::to_json_line(rep) << "\n";
      } else {
        std::cout << (r.passed() ? "PASS" : "FAIL") << " " << r.id << " " << r.title << "\n";
        for (const auto& rep : r.reports) {
          if (!rep.passed()) {
            std::cout << "  " << rep.check << " [" << to_string(rep.system) << "] " << rep.violation_count
                      << " violation(s); first: " << rep.violations.front().inputs << "\n";
          }
        }
      }
      std::cout.flush();
    });
    return ok ? kOk : kViolations;
  }

  std::uint64_t seed() const {
    if (o_.seed) return *o_.seed;
    if (const char* env = std::getenv("ORDCALC_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw UsageError(std::string("ORDCALC_SEED is not an unsigned integer: ") + env);
      }
    }
    return 1;
  }

  const Options& o_;
  SystemId sys_ = SystemId::Buchholz;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--system,-s", o.system, "buchholz | poly | xi | mixed");
  sub->add_option("--level,-l", o.level, "level J (<= 0); threshold level for mixed");
  sub->add_option("--index,-n", o.index, "subscript n");
  sub->add_flag("--json", o.json, "structured output");
  sub->add_option("--seed", o.seed, "seed (default ORDCALC_SEED or 1)");
  sub->add_option("args", o.args, "terms and names");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordcalc: ordinal notation calculator"};
  app.require_subcommand(1);
  Options o;
  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"parse", "parse and print canonically"},
      {"cmp", "compare two terms: LT, EQ, GT or INC"},
      {"sort", "sort terms ascending"},
      {"k", "critical subterms"},
      {"fc", "formal cardinality"},
      {"ground", "least free level (poly)"},
      {"star", "shift so the greatest free level is 0 (poly)"},
      {"shift", "shift levels at or below --level by --by"},
      {"subst", "TERM VAR VALUE: substitute a variable"},
      {"abstract", "canonical abstraction (xi, mixed)"},
      {"kappa", "fine cardinality (xi)"},
      {"d", "GAMMA BETA: the dominance function"},
      {"ll", "GAMMA ALPHA BETA: the relativized dominance relation"},
      {"enumerate", "every grammatical term within a size budget"},
      {"selfcheck", "run the acceptance criteria"},
  };
  for (const auto& s : commands) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, o);
    const std::string name = s.name;
    if (name == "shift") sub->add_option("--by", o.by, "shift amount");
    if (name == "d") sub->add_option("--m", o.m, "iteration index m");
    if (name == "k") sub->add_option("--family", o.family, "mixed K family: low | high | xi");
    if (name == "enumerate") {
      sub->add_option("--size", o.size, "maximum enumeration weight");
      sub->add_flag("--open", o.open, "include variables");
    }
    if (name == "selfcheck") {
      sub->add_option("--criteria", o.criteria, "criterion ids to run")->delimiter(',');
      sub->add_option("--per-item", o.per_item, "key lemma instances per item");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  try {
    Runner r(o);
    return r.run(app.get_subcommands().front()->get_name());
  } catch (const ParseError& e) {
    std::cerr << "parse error at [" << e.span().start << "," << e.span().end << "): " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConstructionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ShiftError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kInvariant;
  }
}
