#include "ordcalc/order_engine.hpp"

namespace ordcalc {

void multiset_difference(std::span<const Term> a, std::span<const Term> b,
                         std::vector<Term>& a_only, std::vector<Term>& b_only) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = structural_compare(a[i], b[j]);
    if (c == 0) {
      ++i;
      ++j;
    } else if (c < 0) {
      a_only.push_back(a[i++]);
    } else {
      b_only.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) a_only.push_back(a[i]);
  for (; j < b.size(); ++j) b_only.push_back(b[j]);
}

}  // namespace ordcalc
