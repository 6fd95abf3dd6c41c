#pragma once

// Formal cardinalities.
//
// Card covers the integer-valued domains: {-inf} u N>=1 for the stratified
// system and {-inf} u Z<=0 for the polymorphic ones. MCard is the lattice of
// the mixed system: -inf < 1 < 2 < ... < (J,m) pairs ordered
// lexicographically, with m ranging over N u {inf}.

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace ordcalc {

class Card {
 public:
  constexpr Card() = default;
  constexpr explicit Card(int v) : value_(v) {}
  static constexpr Card neg_inf() { return Card(); }

  constexpr bool is_neg_inf() const { return !value_.has_value(); }
  constexpr int value() const { return *value_; }

  friend constexpr bool operator==(const Card&, const Card&) = default;
  friend constexpr std::strong_ordering operator<=>(const Card& a, const Card& b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return !a.is_neg_inf() <=> !b.is_neg_inf();
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const { return is_neg_inf() ? "-inf" : std::to_string(*value_); }

 private:
  std::optional<int> value_;
};

/// A set of formal cardinalities together with its maximum (-inf when empty).
struct CardSet {
  std::vector<Card> values;  // sorted ascending, unique
  Card max() const { return values.empty() ? Card::neg_inf() : values.back(); }
  Card min() const { return values.empty() ? Card::neg_inf() : values.front(); }
  bool contains(Card c) const;
  void insert(Card c);
  void merge(const CardSet& other);
};

class MCard {
 public:
  enum class Kind { NegInf, Low, Large };
  static constexpr int kInfinity = 1 << 30;

  constexpr MCard() = default;
  static constexpr MCard neg_inf() { return MCard(); }
  static constexpr MCard low(int n) { return MCard(Kind::Low, 0, n); }
  /// (J, m); pass kInfinity for m = inf.
  static constexpr MCard large(int level, int m) { return MCard(Kind::Large, level, m); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_large() const { return kind_ == Kind::Large; }
  constexpr int level() const { return level_; }
  /// n for low cardinals; m for large ones.
  constexpr int slot() const { return slot_; }
  constexpr bool slot_is_infinite() const { return slot_ == kInfinity; }

  friend constexpr bool operator==(const MCard&, const MCard&) = default;
  friend constexpr std::strong_ordering operator<=>(const MCard& a, const MCard& b) {
    if (auto c = static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_); c != 0) return c;
    if (auto c = a.level_ <=> b.level_; c != 0) return c;
    return a.slot_ <=> b.slot_;
  }

  std::string to_string() const;

 private:
  constexpr MCard(Kind k, int level, int slot) : kind_(k), level_(level), slot_(slot) {}
  Kind kind_ = Kind::NegInf;
  int level_ = 0;
  int slot_ = 0;
};

/// (J', n) - J = (J' - J, inf).
MCard card_minus(MCard c, int j);
/// min{(J, m), n} = (J, min{m, n}).
MCard card_min(MCard c, int n);
/// J' - (J, n) = J' - J.
int level_minus(int j, MCard c);

struct MCardSet {
  std::vector<MCard> values;  // sorted ascending, unique
  MCard max() const { return values.empty() ? MCard::neg_inf() : values.back(); }
  void insert(MCard c);
  void merge(const MCardSet& other);
};

}  // namespace ordcalc
