#include "ordcalc/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

#include "ordcalc/errors.hpp"

namespace ordcalc {

namespace {

bool head_allowed(SystemId s, Head h) {
  switch (h) {
    case Head::Sum:
    case Head::OmegaPow:
      return true;
    case Head::Omega:
      return s == SystemId::Buchholz || s == SystemId::Mixed;
    case Head::Theta:
      return s == SystemId::Buchholz;
    case Head::OmegaLevel:
      return s == SystemId::Poly;
    case Head::ThetaPoly:
      return s == SystemId::Poly || s == SystemId::Xi;
    case Head::Xi:
      return s == SystemId::Xi || s == SystemId::Mixed;
    case Head::OmegaHigh:
    case Head::ThetaLow:
    case Head::ThetaHigh:
    case Head::ThetaXi:
      return s == SystemId::Mixed;
    case Head::Var:
      return true;
    case Head::FVar:
      return s == SystemId::Xi;
  }
  return false;
}

bool uses_subscript(Head h) {
  switch (h) {
    case Head::Omega:
    case Head::OmegaHigh:
    case Head::Theta:
    case Head::ThetaLow:
    case Head::ThetaHigh:
      return true;
    default:
      return false;
  }
}

bool uses_level(SystemId s, Head h) {
  switch (h) {
    case Head::OmegaLevel:
    case Head::OmegaHigh:
    case Head::Xi:
    case Head::FVar:
      return true;
    case Head::Var:
      return s != SystemId::Buchholz;
    default:
      return false;
  }
}

bool is_theta(Head h) {
  return h == Head::Theta || h == Head::ThetaPoly || h == Head::ThetaLow ||
         h == Head::ThetaHigh || h == Head::ThetaXi;
}

// Checks one node's own fields; children are checked by the caller.
std::string local_violation(const Term& t) {
  const SystemId s = t.system();
  const Head h = t.head();
  if (!head_allowed(s, h)) return "head not available in system " + std::string(to_string(s));
  if (uses_subscript(h) && t.index() < 1) return "subscript must be >= 1";
  if (uses_level(s, h) && t.level() > 0) return "level must be <= 0";
  if (h == Head::Var && s == SystemId::Buchholz && t.index() < 1) return "subscript must be >= 1";
  return {};
}

// Largest buchholz variable subscript seen; flags scope violations.
std::string scan(const Term& t, int& max_var, bool& fvar_seen) {
  max_var = 0;
  fvar_seen = false;
  if (auto v = local_violation(t); !v.empty()) return v;
  if (t.head() == Head::Var) max_var = t.index();
  if (t.head() == Head::FVar) fvar_seen = true;
  for (const auto& c : t.children()) {
    int m = 0;
    bool f = false;
    if (auto v = scan(c, m, f); !v.empty()) return v;
    max_var = std::max(max_var, m);
    fvar_seen = fvar_seen || f;
  }
  if (t.system() == SystemId::Buchholz && t.head() == Head::Theta && max_var >= t.index()) {
    return "th_" + std::to_string(t.index()) + " body mentions a variable with subscript >= " +
           std::to_string(t.index());
  }
  if (t.system() == SystemId::Xi && is_theta(t.head()) && fvar_seen) {
    return "function variable inside a collapse";
  }
  return {};
}

class Parser {
 public:
  Parser(SystemId s, std::string_view text) : sys_(s), text_(text) {}

  Term run() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input", pos_, pos_ + 1);
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t start, std::size_t end) const {
    end = std::min(std::max(end, start), text_.size());
    start = std::min(start, end);
    throw ParseError(msg + " at offset " + std::to_string(start), SourceSpan{start, end});
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_literal(std::string_view lit) {
    skip_ws();
    return text_.substr(pos_).starts_with(lit);
  }

  void expect(std::string_view lit) {
    skip_ws();
    if (!text_.substr(pos_).starts_with(lit)) {
      fail("expected '" + std::string(lit) + "'", pos_, pos_ + 1);
    }
    pos_ += lit.size();
  }

  int integer(bool allow_negative) {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected a number", start, start + 1);
    if (!allow_negative && text_[start] == '-') fail("expected a natural number", start, pos_);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) fail("number out of range", start, pos_);
    return value;
  }

  std::string ident() {
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected an identifier", start, start + 1);
    }
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Term term() {
    std::vector<Term> parts;
    parts.push_back(hterm());
    while (peek_literal("#")) {
      ++pos_;
      parts.push_back(hterm());
    }
    return parts.size() == 1 ? parts.front() : flatten_sum(sys_, parts);
  }

  Term paren_term() {
    expect("(");
    Term t = term();
    expect(")");
    return t;
  }

  Term node(std::size_t start, Head h, int level, int index, std::string name,
            std::vector<Term> kids) {
    Term t = make_node(sys_, h, level, index, std::move(name), std::move(kids));
    int m = 0;
    bool f = false;
    if (auto v = scan(t, m, f); !v.empty()) fail(v, start, pos_);
    return t;
  }

  Term hterm() {
    skip_ws();
    const std::size_t start = pos_;
    auto rest = text_.substr(pos_);
    auto take = [&](std::string_view lit) {
      if (!rest.starts_with(lit)) return false;
      pos_ += lit.size();
      return true;
    };
    if (take("0")) {
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("unexpected digit", pos_, pos_ + 1);
      }
      return zero(sys_);
    }
    if (take("w^")) return omega_pow(paren_term());
    if (take("OO_")) {
      int n = integer(false);
      expect("^(");
      int j = integer(true);
      expect(")");
      return node(start, Head::OmegaHigh, j, n, {}, {});
    }
    if (take("O_")) return node(start, Head::Omega, 0, integer(false), {}, {});
    if (take("O^(")) {
      int j = integer(true);
      expect(")");
      return node(start, Head::OmegaLevel, j, 0, {}, {});
    }
    if (take("Xi^(")) {
      int j = integer(true);
      expect(")");
      return node(start, Head::Xi, j, 0, {}, {paren_term()});
    }
    if (take("thOO_")) {
      int n = integer(false);
      return node(start, Head::ThetaHigh, 0, n, {}, {paren_term()});
    }
    if (take("thO_")) {
      int n = integer(false);
      return node(start, Head::ThetaLow, 0, n, {}, {paren_term()});
    }
    if (take("thXi")) return node(start, Head::ThetaXi, 0, 0, {}, {paren_term()});
    if (take("th_")) {
      int n = integer(false);
      return node(start, Head::Theta, 0, n, {}, {paren_term()});
    }
    if (take("th")) return node(start, Head::ThetaPoly, 0, 0, {}, {paren_term()});
    if (take("v.")) {
      std::string name = ident();
      if (pos_ < text_.size() && text_[pos_] == '_') {
        ++pos_;
        if (sys_ != SystemId::Buchholz) fail("subscripted variables belong to buchholz", start, pos_);
        return node(start, Head::Var, 0, integer(false), std::move(name), {});
      }
      if (sys_ == SystemId::Buchholz) fail("buchholz variables take a subscript", start, pos_ + 1);
      expect("^(");
      int j = integer(true);
      expect(")");
      return node(start, Head::Var, j, 0, std::move(name), {});
    }
    if (take("V.")) {
      std::string name = ident();
      expect("^(");
      int j = integer(true);
      expect(")");
      return node(start, Head::FVar, j, 0, std::move(name), {paren_term()});
    }
    if (pos_ >= text_.size()) fail("unexpected end of input", pos_, pos_);
    fail("unexpected token", pos_, pos_ + 1);
  }

  SystemId sys_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

void render_into(const Term& t, std::string& out) {
  auto paren = [&](const Term& c) {
    out += '(';
    render_into(c, out);
    out += ')';
  };
  switch (t.head()) {
    case Head::Sum: {
      if (t.is_zero()) {
        out += '0';
        return;
      }
      bool first = true;
      for (const auto& c : t.children()) {
        if (!first) out += " # ";
        first = false;
        render_into(c, out);
      }
      return;
    }
    case Head::OmegaPow:
      out += "w^";
      paren(t.arg());
      return;
    case Head::Omega:
      out += "O_" + std::to_string(t.index());
      return;
    case Head::OmegaLevel:
      out += "O^(" + std::to_string(t.level()) + ")";
      return;
    case Head::OmegaHigh:
      out += "OO_" + std::to_string(t.index()) + "^(" + std::to_string(t.level()) + ")";
      return;
    case Head::Xi:
      out += "Xi^(" + std::to_string(t.level()) + ")";
      paren(t.arg());
      return;
    case Head::Theta:
      out += "th_" + std::to_string(t.index());
      paren(t.arg());
      return;
    case Head::ThetaPoly:
      out += "th";
      paren(t.arg());
      return;
    case Head::ThetaLow:
      out += "thO_" + std::to_string(t.index());
      paren(t.arg());
      return;
    case Head::ThetaHigh:
      out += "thOO_" + std::to_string(t.index());
      paren(t.arg());
      return;
    case Head::ThetaXi:
      out += "thXi";
      paren(t.arg());
      return;
    case Head::Var:
      out += "v." + t.name();
      if (t.system() == SystemId::Buchholz) {
        out += "_" + std::to_string(t.index());
      } else {
        out += "^(" + std::to_string(t.level()) + ")";
      }
      return;
    case Head::FVar:
      out += "V." + t.name() + "^(" + std::to_string(t.level()) + ")";
      paren(t.arg());
      return;
  }
}

}  // namespace

Term parse(SystemId system, std::string_view text) { return Parser(system, text).run(); }

std::string render(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

std::string grammar_violation(const Term& t) {
  int m = 0;
  bool f = false;
  return scan(t, m, f);
}

}  // namespace ordcalc
