#include "ordcalc/term.hpp"

#include <algorithm>
#include <functional>

#include "ordcalc/errors.hpp"

namespace ordcalc {

namespace detail {
struct Node {
  SystemId system;
  Head head;
  int level = 0;
  int index = 0;
  std::string name;
  std::vector<Term> children;
  std::size_t size = 1;
  std::size_t hash = 0;
  bool closed = true;
};
}  // namespace detail

std::string_view to_string(SystemId s) {
  switch (s) {
    case SystemId::Buchholz: return "buchholz";
    case SystemId::Poly: return "poly";
    case SystemId::Xi: return "xi";
    case SystemId::Mixed: return "mixed";
  }
  return "?";
}

bool parse_system(std::string_view text, SystemId& out) {
  for (auto s : {SystemId::Buchholz, SystemId::Poly, SystemId::Xi, SystemId::Mixed}) {
    if (text == to_string(s)) {
      out = s;
      return true;
    }
  }
  return false;
}

std::string_view to_string(Cmp c) {
  switch (c) {
    case Cmp::Less: return "LT";
    case Cmp::Equal: return "EQ";
    case Cmp::Greater: return "GT";
    case Cmp::Incomparable: return "INC";
  }
  return "?";
}

Head Term::head() const { return node_->head; }
SystemId Term::system() const { return node_->system; }
int Term::level() const { return node_->level; }
int Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }
std::span<const Term> Term::children() const { return node_->children; }
const Term& Term::arg() const { return node_->children.front(); }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::hash() const { return node_->hash; }
bool Term::closed() const { return node_->closed; }
bool Term::is_zero() const { return node_->head == Head::Sum && node_->children.empty(); }

bool Term::is_collapse() const {
  switch (head()) {
    case Head::Theta:
    case Head::ThetaPoly:
    case Head::ThetaLow:
    case Head::ThetaHigh:
    case Head::ThetaXi: return true;
    default: return false;
  }
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
  return structural_compare(a, b) == 0;
}

std::strong_ordering structural_compare(const Term& a, const Term& b) {
  if (a.identity() == b.identity()) return std::strong_ordering::equal;
  if (auto c = a.head() <=> b.head(); c != 0) return c;
  if (auto c = a.level() <=> b.level(); c != 0) return c;
  if (auto c = a.index() <=> b.index(); c != 0) return c;
  if (auto c = a.name().compare(b.name()) <=> 0; c != 0) return c;
  auto ac = a.children();
  auto bc = b.children();
  if (auto c = ac.size() <=> bc.size(); c != 0) return c;
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (auto c = structural_compare(ac[i], bc[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

StructuralKey structural_key(const Term& t) { return StructuralKey(t); }

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  // boost::hash_combine constant, widened
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t arity(Head h) {
  switch (h) {
    case Head::Omega:
    case Head::OmegaLevel:
    case Head::OmegaHigh:
    case Head::Var: return 0;
    case Head::Sum: return static_cast<std::size_t>(-1);
    default: return 1;
  }
}

}  // namespace

Term make_node(SystemId system, Head head, int level, int index, std::string name,
               std::vector<Term> children) {
  auto want = arity(head);
  if (want != static_cast<std::size_t>(-1) && children.size() != want) {
    throw ConstructionError("wrong number of arguments for term head");
  }
  auto node = std::make_shared<detail::Node>();
  node->system = system;
  node->head = head;
  node->level = level;
  node->index = index;
  node->name = std::move(name);
  std::size_t h = std::hash<int>{}(static_cast<int>(head) * 31 + static_cast<int>(system));
  h = mix(h, std::hash<int>{}(level));
  h = mix(h, std::hash<int>{}(index));
  h = mix(h, std::hash<std::string>{}(node->name));
  node->closed = head != Head::Var && head != Head::FVar;
  for (const auto& c : children) {
    if (c.system() != system) throw ConstructionError("subterm belongs to a different system");
    node->size += c.size();
    h = mix(h, c.hash());
    node->closed = node->closed && c.closed();
  }
  node->hash = h;
  node->children = std::move(children);
  return Term(std::move(node));
}

Term zero(SystemId system) { return make_node(system, Head::Sum, 0, 0, {}, {}); }

Term flatten_sum(SystemId system, std::span<const Term> components) {
  std::vector<Term> flat;
  flat.reserve(components.size());
  for (const auto& c : components) {
    if (c.system() != system) throw ConstructionError("sum mixes terms of different systems");
    if (c.is_sum()) {
      for (const auto& inner : c.children()) flat.push_back(inner);
    } else {
      flat.push_back(c);
    }
  }
  if (flat.size() == 1) return flat.front();
  std::sort(flat.begin(), flat.end(), TermLess{});
  return make_node(system, Head::Sum, 0, 0, {}, std::move(flat));
}

Term flatten_sum(SystemId system, std::initializer_list<Term> components) {
  return flatten_sum(system, std::span<const Term>(components.begin(), components.size()));
}

Term omega_pow(const Term& exponent) {
  return make_node(exponent.system(), Head::OmegaPow, 0, 0, {}, {exponent});
}

Term natural_sum(const Term& a, const Term& b) { return flatten_sum(a.system(), {a, b}); }

std::size_t size(const Term& t) { return t.size(); }

Term with_children(const Term& t, std::vector<Term> children) {
  if (t.is_sum()) return flatten_sum(t.system(), children);
  return make_node(t.system(), t.head(), t.level(), t.index(), t.name(), std::move(children));
}

void sort_unique(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), TermLess{});
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
}

bool mentions(const Term& t, std::string_view name) {
  if (t.closed()) return false;
  if ((t.head() == Head::Var || t.head() == Head::FVar) && t.name() == name) return true;
  for (const auto& c : t.children()) {
    if (mentions(c, name)) return true;
  }
  return false;
}

namespace {
void collect_names(const Term& t, std::vector<std::string>& out) {
  if (t.closed()) return;
  if (t.head() == Head::Var || t.head() == Head::FVar) out.push_back(t.name());
  for (const auto& c : t.children()) collect_names(c, out);
}
}  // namespace

std::vector<std::string> variable_names(const Term& t) {
  std::vector<std::string> out;
  collect_names(t, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ordcalc
