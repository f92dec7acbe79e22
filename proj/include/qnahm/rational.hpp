#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <numeric>
#include <string>
#include <string_view>

#include "qnahm/error.hpp"

namespace qnahm {

// Exact rational with 64-bit components, always stored reduced with a
// positive denominator. Exponents and quadratic-form entries in the catalog
// have tiny numerators and denominators.
class rational {
public:
  constexpr rational() = default;
  constexpr rational(std::int64_t n) : num_(n) {} // NOLINT: implicit from integers
  constexpr rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  constexpr std::int64_t numerator() const noexcept { return num_; }
  constexpr std::int64_t denominator() const noexcept { return den_; }

  constexpr rational operator-() const { return rational(-num_, den_); }

  constexpr rational& operator+=(const rational& o) { return *this = *this + o; }
  constexpr rational& operator-=(const rational& o) { return *this = *this - o; }
  constexpr rational& operator*=(const rational& o) { return *this = *this * o; }
  constexpr rational& operator/=(const rational& o) { return *this = *this / o; }

  friend constexpr rational operator+(const rational& a, const rational& b) {
    const std::int64_t g = std::gcd(a.den_, b.den_);
    return rational(a.num_ * (b.den_ / g) + b.num_ * (a.den_ / g), a.den_ / g * b.den_);
  }
  friend constexpr rational operator-(const rational& a, const rational& b) { return a + (-b); }
  friend constexpr rational operator*(const rational& a, const rational& b) {
    const std::int64_t g1 = std::gcd(a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_, a.den_);
    const std::int64_t d1 = g1 ? g1 : 1;
    const std::int64_t d2 = g2 ? g2 : 1;
    return rational((a.num_ / d1) * (b.num_ / d2), (a.den_ / d2) * (b.den_ / d1));
  }
  friend constexpr rational operator/(const rational& a, const rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return a * rational(b.den_, b.num_);
  }

  friend constexpr bool operator==(const rational&, const rational&) = default;
  friend constexpr std::strong_ordering operator<=>(const rational& a, const rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

private:
  constexpr void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

inline std::int64_t floor(const rational& r) { return floor_div(r.numerator(), r.denominator()); }
inline std::int64_t ceil(const rational& r) { return ceil_div(r.numerator(), r.denominator()); }

inline bool is_integer(const rational& r) { return r.denominator() == 1; }

// Least D with r*D integral, folded into an existing lattice denominator.
inline std::int64_t lcm_den(std::int64_t den, const rational& r) { return std::lcm(den, r.denominator()); }

// r * den as an integer; throws when r is not on the (1/den) lattice.
inline std::int64_t scaled(const rational& r, std::int64_t den) {
  const rational s = r * den;
  if (!is_integer(s))
    throw incompatible_denominator("exponent " + std::to_string(r.numerator()) + "/" +
                                   std::to_string(r.denominator()) + " is not a multiple of 1/" +
                                   std::to_string(den));
  return s.numerator();
}

inline std::string to_string(const rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "p", "-p", "p/q" and decimal forms such as "1.5".
inline rational parse_rational(std::string_view text) {
  auto fail = [&] { throw parse_error(0, {"rational number"}); };
  if (text.empty()) fail();
  std::size_t pos = 0;
  bool neg = false;
  if (text[pos] == '+' || text[pos] == '-') neg = text[pos++] == '-';
  auto read_int = [&](std::int64_t& out, std::int64_t& digits) {
    out = 0;
    digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      out = out * 10 + (text[pos++] - '0');
      ++digits;
    }
  };
  std::int64_t num = 0, nd = 0;
  read_int(num, nd);
  rational value(num);
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    std::int64_t den = 0, dd = 0;
    read_int(den, dd);
    if (nd == 0 || dd == 0 || den == 0) fail();
    value = rational(num, den);
  } else if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::int64_t frac = 0, fd = 0;
    read_int(frac, fd);
    if (nd == 0 && fd == 0) fail();
    std::int64_t p10 = 1;
    for (std::int64_t i = 0; i < fd; ++i) p10 *= 10;
    value = rational(num) + rational(frac, p10);
  } else if (nd == 0) {
    fail();
  }
  if (pos != text.size()) fail();
  return neg ? -value : value;
}

} // namespace qnahm
