#pragma once

#include <string>

#include "qnahm/rational.hpp"

namespace qnahm {

// The monomial sign * q^exponent.
struct signed_monomial {
  int sign = 1;
  rational exponent{0};

  friend bool operator==(const signed_monomial&, const signed_monomial&) = default;
};

inline signed_monomial q_pow(rational e, int sign = 1) { return {sign, e}; }
inline signed_monomial q_pow(std::int64_t e, int sign = 1) { return {sign, rational(e)}; }

inline signed_monomial operator*(const signed_monomial& a, const signed_monomial& b) {
  return {a.sign * b.sign, a.exponent + b.exponent};
}

inline signed_monomial operator-(const signed_monomial& a) { return {-a.sign, a.exponent}; }

inline signed_monomial inverse(const signed_monomial& a) { return {a.sign, -a.exponent}; }

inline signed_monomial pow(const signed_monomial& a, std::int64_t k) {
  return {(k % 2 != 0) ? a.sign : 1, a.exponent * k};
}

inline std::string to_string(const signed_monomial& m) {
  std::string s = m.sign < 0 ? "-" : "";
  if (m.exponent == 0) return s + "1";
  s += "q";
  if (m.exponent != 1) s += "^" + (is_integer(m.exponent) ? to_string(m.exponent) : "(" + to_string(m.exponent) + ")");
  return s;
}

} // namespace qnahm
