#pragma once

// Small product-expression language for inspecting series:
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := '-' factor | primary ('^' ['-'] digits)?
//   primary := 'M(' sign ',' rational ')' | 'P(' mono (',' mono)* ';' mono ')'
//            | 'PF(' mono ';' mono ';' digits ')' | '(' expr ')' | digits
//   mono    := ['-'] ('1' | 'q' ('^' rational | '^(' rational ')')?)
// Whitespace is ignored everywhere.

#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qnahm/error.hpp"
#include "qnahm/products.hpp"
#include "qnahm/series.hpp"

namespace qnahm {

struct expr_node {
  enum class kind { monomial, poch, integer_literal, sum, product, negate, power };
  kind type = kind::integer_literal;
  signed_monomial mono;
  poch_spec spec;
  integer value;
  std::int64_t exponent = 1;   // power nodes
  std::vector<int> signs;      // sum nodes: +1 or -1 per child
  std::vector<std::shared_ptr<expr_node>> children;
};

using expr_ptr = std::shared_ptr<expr_node>;

namespace detail {

class expr_parser {
public:
  explicit expr_parser(std::string_view text) : s_(text) {}

  expr_ptr parse() {
    auto e = parse_expr();
    skip();
    if (pos_ != s_.size()) fail({"'+'", "'-'", "'*'", "end of input"});
    return e;
  }

private:
  [[noreturn]] void fail(std::vector<std::string> expected) const { throw parse_error(pos_, std::move(expected)); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"});
  }

  // A function name followed by '(', with optional whitespace between.
  bool accept_call(std::string_view name) {
    skip();
    const std::size_t at = pos_;
    if (s_.substr(pos_, name.size()) != name) return false;
    pos_ += name.size();
    if (accept('(')) return true;
    pos_ = at;
    return false;
  }

  std::string digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail({"digits"});
    return std::string(s_.substr(start, pos_ - start));
  }

  std::int64_t small_int() {
    const std::size_t at = pos_;
    const std::string d = digits();
    if (d.size() > 15) {
      pos_ = at;
      fail({"integer below 10^15"});
    }
    return std::stoll(d);
  }

  rational parse_rat() {
    skip();
    bool neg = accept('-');
    const std::int64_t num = small_int();
    std::int64_t den = 1;
    if (accept('/')) {
      const std::size_t at = pos_;
      den = small_int();
      if (den == 0) {
        pos_ = at;
        fail({"nonzero denominator"});
      }
    }
    return rational(neg ? -num : num, den);
  }

  signed_monomial parse_mono() {
    int sign = accept('-') ? -1 : 1;
    skip();
    if (accept('1')) return {sign, rational(0)};
    if (!accept('q')) fail({"'1'", "'q'"});
    if (!accept('^')) return {sign, rational(1)};
    if (accept('(')) {
      const rational e = parse_rat();
      expect(')');
      return {sign, e};
    }
    return {sign, parse_rat()};
  }

  expr_ptr parse_expr() {
    auto node = std::make_shared<expr_node>();
    node->type = expr_node::kind::sum;
    node->children.push_back(parse_term());
    node->signs.push_back(1);
    for (;;) {
      if (accept('+'))
        node->signs.push_back(1);
      else if (accept('-'))
        node->signs.push_back(-1);
      else
        break;
      node->children.push_back(parse_term());
    }
    return node->children.size() == 1 ? node->children[0] : node;
  }

  expr_ptr parse_term() {
    auto node = std::make_shared<expr_node>();
    node->type = expr_node::kind::product;
    node->children.push_back(parse_factor());
    while (accept('*')) node->children.push_back(parse_factor());
    return node->children.size() == 1 ? node->children[0] : node;
  }

  expr_ptr parse_factor() {
    if (accept('-')) {
      auto node = std::make_shared<expr_node>();
      node->type = expr_node::kind::negate;
      node->children.push_back(parse_factor());
      return node;
    }
    auto base = parse_primary();
    if (!accept('^')) return base;
    const bool neg = accept('-');
    const std::int64_t k = small_int();
    auto node = std::make_shared<expr_node>();
    node->type = expr_node::kind::power;
    node->exponent = neg ? -k : k;
    node->children.push_back(std::move(base));
    return node;
  }

  expr_ptr parse_primary() {
    auto node = std::make_shared<expr_node>();
    skip();
    if (accept_call("M")) {
      node->type = expr_node::kind::monomial;
      const bool neg = accept('-');
      if (!accept('1')) fail({"'1'", "'-1'"});
      expect(',');
      node->mono = {neg ? -1 : 1, parse_rat()};
      expect(')');
      return node;
    }
    if (accept_call("PF")) {
      node->type = expr_node::kind::poch;
      node->spec.args = {parse_mono()};
      expect(';');
      node->spec.base = parse_mono();
      expect(';');
      node->spec.length = small_int();
      expect(')');
      return node;
    }
    if (accept_call("P")) {
      node->type = expr_node::kind::poch;
      node->spec.args.push_back(parse_mono());
      while (accept(',')) node->spec.args.push_back(parse_mono());
      expect(';');
      node->spec.base = parse_mono();
      expect(')');
      return node;
    }
    if (accept('(')) {
      auto inner = parse_expr();
      expect(')');
      return inner;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      node->type = expr_node::kind::integer_literal;
      node->value = integer(digits());
      return node;
    }
    fail({"'M('", "'P('", "'PF('", "'('", "integer"});
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline void collect_den(const expr_node& n, std::int64_t& den) {
  switch (n.type) {
  case expr_node::kind::monomial: den = lcm_den(den, n.mono.exponent); break;
  case expr_node::kind::poch:
    for (const auto& a : n.spec.args) den = lcm_den(den, a.exponent);
    den = lcm_den(den, n.spec.base.exponent);
    break;
  default: break;
  }
  for (const auto& c : n.children) collect_den(*c, den);
}

inline series eval_node(const expr_node& n, std::int64_t den, std::int64_t order) {
  switch (n.type) {
  case expr_node::kind::monomial:
    if (scaled(n.mono.exponent, den) >= order) return series::zero(den, order);
    return series::monomial(n.mono, den, order);
  case expr_node::kind::poch: return poch(n.spec, den, order);
  case expr_node::kind::integer_literal: return n.value * series::one(den, order);
  case expr_node::kind::negate: return -eval_node(*n.children[0], den, order);
  case expr_node::kind::sum: {
    series acc = series::zero(den, order);
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const series c = eval_node(*n.children[i], den, order);
      acc = n.signs[i] > 0 ? acc + c : acc - c;
    }
    return acc;
  }
  case expr_node::kind::product: {
    series acc = series::one(den, order);
    for (const auto& c : n.children) acc *= eval_node(*c, den, order);
    return acc;
  }
  case expr_node::kind::power: {
    series b = eval_node(*n.children[0], den, order);
    if (n.exponent < 0) {
      // a base whose leading term sits at or above `order` needs more terms before it can be inverted
      std::int64_t w = order;
      for (int attempt = 0; b.is_zero() && attempt < 10; ++attempt) {
        w = 2 * w + 8;
        b = eval_node(*n.children[0], den, w);
      }
      b = b.inverse();
    }
    series acc = series::one(den, order);
    for (std::int64_t k = 0; k < (n.exponent < 0 ? -n.exponent : n.exponent); ++k) acc *= b;
    return acc;
  }
  }
  return series::zero(den, order);
}

} // namespace detail

inline expr_ptr parse_expr(std::string_view text) { return detail::expr_parser(text).parse(); }

inline std::int64_t expr_denominator(const expr_node& n) {
  std::int64_t den = 1;
  detail::collect_den(n, den);
  return den;
}

// Value of the expression, exact for every exponent below `order`.
inline series evaluate(const expr_node& n, const rational& order) {
  const std::int64_t den = lcm_den(expr_denominator(n), order);
  return at_order(scaled(order, den), [&](std::int64_t working) { return detail::eval_node(n, den, working); });
}

// Nonzero (exponent, coefficient) rows below `order`, in increasing exponent.
inline std::vector<std::pair<rational, integer>> expand(std::string_view text, const rational& order) {
  const series s = evaluate(*parse_expr(text), order);
  std::vector<std::pair<rational, integer>> rows;
  s.for_each_term([&](const rational& e, const integer& c) { rows.emplace_back(e, c); });
  return rows;
}

} // namespace qnahm
