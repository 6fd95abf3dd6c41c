#include "ordcalc/card.hpp"

#include <algorithm>

#include "ordcalc/errors.hpp"

namespace ordcalc {

namespace {
template <class V, class T>
void sorted_insert(V& values, const T& c) {
  auto it = std::lower_bound(values.begin(), values.end(), c);
  if (it == values.end() || *it != c) values.insert(it, c);
}
}  // namespace

bool CardSet::contains(Card c) const {
  return std::binary_search(values.begin(), values.end(), c);
}

void CardSet::insert(Card c) { sorted_insert(values, c); }

void CardSet::merge(const CardSet& other) {
  for (auto c : other.values) insert(c);
}

void MCardSet::insert(MCard c) { sorted_insert(values, c); }

void MCardSet::merge(const MCardSet& other) {
  for (auto c : other.values) insert(c);
}

std::string MCard::to_string() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::Low: return std::to_string(slot_);
    case Kind::Large:
      return "(" + std::to_string(level_) + "," +
             (slot_is_infinite() ? std::string("inf") : std::to_string(slot_)) + ")";
  }
  return "?";
}

MCard card_minus(MCard c, int j) {
  if (!c.is_large()) throw PreconditionError("large cardinality", "subtraction needs a pair");
  return MCard::large(c.level() - j, MCard::kInfinity);
}

MCard card_min(MCard c, int n) {
  if (!c.is_large()) throw PreconditionError("large cardinality", "min needs a pair");
  return MCard::large(c.level(), std::min(c.slot(), n));
}

int level_minus(int j, MCard c) {
  if (!c.is_large()) throw PreconditionError("large cardinality", "level difference needs a pair");
  return j - c.level();
}

}  // namespace ordcalc
