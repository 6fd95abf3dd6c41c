#pragma once

// Shared term algebra for all four notation systems.
//
// A term is an immutable, reference-counted tree. Sums are kept in canonical
// form: nested sums are flattened, a singleton collapses to its element and
// components are sorted by the structural order, so syntactic identity is
// plain structural equality. The empty sum is the term 0.

#include <compare>
#include <initializer_list>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ordcalc {

enum class SystemId : std::uint8_t { Buchholz, Poly, Xi, Mixed };

std::string_view to_string(SystemId s);
/// Accepts "buchholz", "poly", "xi", "mixed".
bool parse_system(std::string_view text, SystemId& out);

enum class Head : std::uint8_t {
  Sum,         // #{...}; the empty sum is 0
  OmegaPow,    // w^(a)
  Omega,       // O_n                 (buchholz, mixed low ladder)
  OmegaLevel,  // O^(J)               (poly)
  OmegaHigh,   // OO_n^(J)            (mixed upper ladder)
  Xi,          // Xi^(J)(a)           (xi, mixed)
  Theta,       // th_n(a)             (buchholz)
  ThetaPoly,   // th(a)               (poly, xi)
  ThetaLow,    // thO_n(a)            (mixed)
  ThetaHigh,   // thOO_n(a)           (mixed)
  ThetaXi,     // thXi(a)             (mixed)
  Var,         // v.x_n / v.x^(J)
  FVar,        // V.F^(J)(a)          (xi)
};

/// Outcome of the (partial, on open terms) ordering.
enum class Cmp : std::uint8_t { Less, Equal, Greater, Incomparable };

std::string_view to_string(Cmp c);

class Term;

namespace detail {
struct Node;
}

class Term {
 public:
  Term() = default;

  Head head() const;
  SystemId system() const;
  /// De Bruijn-style level J (poly/xi/mixed heads and level variables).
  int level() const;
  /// Natural-number subscript n (buchholz heads, mixed ladders).
  int index() const;
  const std::string& name() const;
  std::span<const Term> children() const;
  /// The single child of OmegaPow, Xi, FVar and every collapse head.
  const Term& arg() const;

  std::size_t size() const;
  std::size_t hash() const;
  /// No Var or FVar anywhere.
  bool closed() const;
  bool is_zero() const;
  bool is_sum() const { return head() == Head::Sum; }
  /// Additively indecomposable: anything but a sum.
  bool is_h() const { return !is_sum(); }
  /// Strongly critical: indecomposable and not an omega-power.
  bool is_sc() const { return is_h() && head() != Head::OmegaPow; }
  bool is_collapse() const;

  bool valid() const { return node_ != nullptr; }
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  friend Term make_node(SystemId, Head, int, int, std::string, std::vector<Term>);
  explicit Term(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;
};

/// Total order on raw syntax: head tag, level, index, name, then children
/// lexicographically. Used for canonical sum ordering and set dedup.
std::strong_ordering structural_compare(const Term& a, const Term& b);

/// Opaque token ordering terms by structural_compare.
class StructuralKey {
 public:
  explicit StructuralKey(Term t) : term_(std::move(t)) {}
  friend std::strong_ordering operator<=>(const StructuralKey& a, const StructuralKey& b) {
    return structural_compare(a.term_, b.term_);
  }
  friend bool operator==(const StructuralKey& a, const StructuralKey& b) {
    return a.term_ == b.term_;
  }

 private:
  Term term_;
};

StructuralKey structural_key(const Term& t);

/// Raw node constructor. Checks arity only; system-level validation lives in
/// each system's builders. Sums must go through flatten_sum.
Term make_node(SystemId system, Head head, int level, int index, std::string name,
               std::vector<Term> children);

Term zero(SystemId system);
/// Canonical sum: merges nested sums, drops nothing (0 components vanish as
/// empty sums), sorts, and collapses a singleton. Throws ConstructionError on
/// components from different systems.
Term flatten_sum(SystemId system, std::span<const Term> components);
Term flatten_sum(SystemId system, std::initializer_list<Term> components);
Term omega_pow(const Term& exponent);
/// a # b with flattening.
Term natural_sum(const Term& a, const Term& b);

/// Node count; 0 has size 1.
std::size_t size(const Term& t);

/// Rebuild a node with new children, re-canonicalising when it is a sum.
Term with_children(const Term& t, std::vector<Term> children);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return structural_compare(a, b) < 0; }
};

/// Sort by structural order and drop duplicates.
void sort_unique(std::vector<Term>& terms);

/// True when a variable (or function variable) with this name occurs.
bool mentions(const Term& t, std::string_view name);
/// Names of every Var and FVar in t, sorted and unique.
std::vector<std::string> variable_names(const Term& t);

}  // namespace ordcalc
