#pragma once

// Clauses of the ordering that every system shares: sums compare as
// multisets, omega-powers against each other and against strongly critical
// terms. The system supplies the strongly-critical-vs-strongly-critical case.
//
// Two evaluation modes exist. Reference mode is plain recursion over the
// definition and keeps no state. Memoized mode caches each decided pair; the
// harness cross-checks the two.

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "ordcalc/errors.hpp"
#include "ordcalc/term.hpp"

namespace ordcalc {

enum class EvalMode { Memoized, Reference };

/// Splits two sorted multisets into A\B and B\A.
void multiset_difference(std::span<const Term> a, std::span<const Term> b,
                         std::vector<Term>& a_only, std::vector<Term>& b_only);

template <class Derived>
class OrderEngine {
 public:
  static constexpr int kMaxDepth = 4000;
  static constexpr std::size_t kCacheLimit = 4'000'000;

  explicit OrderEngine(EvalMode mode) : mode_(mode) {}

  EvalMode mode() const { return mode_; }

  bool less(const Term& a, const Term& b) {
    if (a == b) return false;
    if (mode_ == EvalMode::Reference) return guarded(a, b);
    PairKey key{a, b};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    bool result = guarded(a, b);
    if (cache_.size() >= kCacheLimit) cache_.clear();
    cache_.emplace(std::move(key), result);
    return result;
  }

  /// Like less, but the top pair is not cached; sub-comparisons still are.
  /// For sweeps that visit each pair once.
  bool less_once(const Term& a, const Term& b) {
    if (a == b) return false;
    return guarded(a, b);
  }

  bool leq(const Term& a, const Term& b) { return a == b || less(a, b); }

  Cmp compare(const Term& a, const Term& b) {
    if (a == b) return Cmp::Equal;
    if (less(a, b)) return Cmp::Less;
    if (less(b, a)) return Cmp::Greater;
    return Cmp::Incomparable;
  }

  void clear_cache() { cache_.clear(); }

 protected:
  Derived& self() { return static_cast<Derived&>(*this); }

 private:
  struct PairKey {
    Term a;
    Term b;
    friend bool operator==(const PairKey& x, const PairKey& y) { return x.a == y.a && x.b == y.b; }
  };
  struct PairHash {
    std::size_t operator()(const PairKey& k) const {
      return k.a.hash() * 0x9e3779b97f4a7c15ULL ^ (k.b.hash() + 0x7f4a7c159e3779b9ULL);
    }
  };

  bool guarded(const Term& a, const Term& b) {
    if (++depth_ > kMaxDepth) {
      depth_ = 0;
      throw InvariantError("comparison recursion exceeded depth bound");
    }
    bool r = decide(a, b);
    --depth_;
    return r;
  }

  bool decide(const Term& a, const Term& b) {
    if (a.is_sum() || b.is_sum()) {
      if (a.is_sum() && b.is_sum()) {
        std::vector<Term> a_only;
        std::vector<Term> b_only;
        multiset_difference(a.children(), b.children(), a_only, b_only);
        for (const auto& top : b_only) {
          bool dominates = true;
          for (const auto& x : a_only) {
            if (!less(x, top)) {
              dominates = false;
              break;
            }
          }
          if (dominates) return true;
        }
        return false;
      }
      if (a.is_sum()) {
        for (const auto& x : a.children()) {
          if (!less(x, b)) return false;
        }
        return true;
      }
      for (const auto& y : b.children()) {
        if (leq(a, y)) return true;
      }
      return false;
    }
    const bool a_pow = a.head() == Head::OmegaPow;
    const bool b_pow = b.head() == Head::OmegaPow;
    if (a_pow && b_pow) return less(a.arg(), b.arg());
    if (b_pow) return less(a, b.arg());
    if (a_pow) return leq(a.arg(), b);
    return self().less_sc(a, b);
  }

  EvalMode mode_;
  int depth_ = 0;
  std::unordered_map<PairKey, bool, PairHash> cache_;
};

}  // namespace ordcalc
