#include <algorithm>

#include "ordcalc/buchholz.hpp"
#include "ordcalc/errors.hpp"
#include "ordcalc/harness.hpp"
#include "ordcalc/mixed.hpp"
#include "ordcalc/poly.hpp"
#include "ordcalc/syntax.hpp"
#include "ordcalc/xi.hpp"

namespace ordcalc::harness {

namespace {

class Enumerator {
 public:
  explicit Enumerator(const EnumBudget& b) : b_(b) {}

  std::vector<Term> run() {
    if (b_.max_size == 0) throw PreconditionError("max_size >= 1", "0");
    if (b_.max_subscript < 1 && b_.system != SystemId::Poly && b_.system != SystemId::Xi) {
      throw PreconditionError("max_subscript >= 1", std::to_string(b_.max_subscript));
    }
    if (b_.min_level > 0) throw PreconditionError("min_level <= 0", std::to_string(b_.min_level));
    h_.assign(b_.max_size + 1, {});
    all_.assign(b_.max_size + 1, {});
    for (std::size_t s = 1; s <= b_.max_size; ++s) {
      // Cardinal and variable leaves weigh 2, a symbol plus its index.
      if (s == 2) leaves(h_[2]);
      if (s >= 2) {
        for (const auto& a : all_[s - 1]) unary(a, h_[s]);
      }
      std::erase_if(h_[s], [&](const Term& t) { return !grammar_violation(t).empty(); });
      all_[s] = h_[s];
      if (s == 1) all_[s].push_back(ordcalc::zero(b_.system));
      if (s >= 3) sums(s);
      count_ += all_[s].size();
      if (count_ > b_.cap) {
        throw PreconditionError("enumeration cap", "more than " + std::to_string(b_.cap) + " terms");
      }
    }
    std::vector<Term> out;
    out.reserve(count_);
    for (auto& layer : all_) out.insert(out.end(), layer.begin(), layer.end());
    std::sort(out.begin(), out.end(), TermLess{});
    return out;
  }

 private:
  void leaves(std::vector<Term>& out) const {
    const bool open = !b_.closed_only;
    switch (b_.system) {
      case SystemId::Buchholz:
        for (int n = 1; n <= b_.max_subscript; ++n) {
          out.push_back(buchholz::omega(n));
          if (open) {
            for (const auto& v : b_.variables) out.push_back(buchholz::var(v, n));
          }
        }
        return;
      case SystemId::Poly:
        for (int j = b_.min_level; j <= 0; ++j) {
          out.push_back(poly::omega(j));
          if (open) {
            for (const auto& v : b_.variables) out.push_back(poly::var(v, j));
          }
        }
        return;
      case SystemId::Xi:
        if (open) {
          for (int j = b_.min_level; j <= 0; ++j) {
            for (const auto& v : b_.variables) out.push_back(xi::var(v, j));
          }
        }
        return;
      case SystemId::Mixed:
        for (int n = 1; n <= b_.max_subscript; ++n) out.push_back(mixed::omega(n));
        for (int j = b_.min_level; j <= 0; ++j) {
          for (int n = 1; n <= b_.max_subscript; ++n) out.push_back(mixed::omega_high(j, n));
          if (open) {
            for (const auto& v : b_.variables) out.push_back(mixed::var(v, j));
          }
        }
        return;
    }
  }

  void unary(const Term& a, std::vector<Term>& out) const {
    out.push_back(omega_pow(a));
    switch (b_.system) {
      case SystemId::Buchholz:
        for (int n = 1; n <= b_.max_subscript; ++n) out.push_back(buchholz::theta(n, a));
        return;
      case SystemId::Poly:
        out.push_back(poly::theta(a));
        return;
      case SystemId::Xi:
        out.push_back(xi::theta(a));
        for (int j = b_.min_level; j <= 0; ++j) {
          out.push_back(xi::xi(j, a));
          if (!b_.closed_only) {
            for (const auto& f : b_.function_variables) out.push_back(xi::fvar(f, j, a));
          }
        }
        return;
      case SystemId::Mixed:
        for (int n = 1; n <= b_.max_subscript; ++n) {
          out.push_back(mixed::theta_low(n, a));
          out.push_back(mixed::theta_high(n, a));
        }
        out.push_back(mixed::theta_xi(a));
        for (int j = b_.min_level; j <= 0; ++j) out.push_back(mixed::xi(j, a));
        return;
    }
  }

  // Sums of weight s: at least two H components whose weights total s - 1,
  // chosen as non-decreasing index sequences so each multiset appears once.
  void sums(std::size_t s) {
    std::vector<const Term*> pool;
    std::vector<std::size_t> sizes;
    for (std::size_t k = 1; k < s; ++k) {
      for (const auto& t : h_[k]) {
        pool.push_back(&t);
        sizes.push_back(k);
      }
    }
    std::vector<Term> picked;
    auto rec = [&](auto&& self, std::size_t start, std::size_t remaining) -> void {
      if (remaining == 0) {
        if (picked.size() >= 2) all_[s].push_back(flatten_sum(b_.system, picked));
        return;
      }
      for (std::size_t i = start; i < pool.size(); ++i) {
        if (sizes[i] > remaining) continue;
        picked.push_back(*pool[i]);
        self(self, i, remaining - sizes[i]);
        picked.pop_back();
      }
    };
    rec(rec, 0, s - 1);
  }

  const EnumBudget& b_;
  std::vector<std::vector<Term>> h_;
  std::vector<std::vector<Term>> all_;
  std::size_t count_ = 0;
};

}  // namespace

std::vector<Term> enumerate(const EnumBudget& budget) { return Enumerator(budget).run(); }

std::size_t enumeration_weight(const Term& t) {
  if (t.children().empty()) return t.is_sum() ? 1 : 2;
  std::size_t w = 1;
  for (const auto& c : t.children()) w += enumeration_weight(c);
  return w;
}

}  // namespace ordcalc::harness
