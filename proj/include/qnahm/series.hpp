#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qnahm/error.hpp"
#include "qnahm/monomial.hpp"
#include "qnahm/rational.hpp"

namespace qnahm {

using integer = mpz_class;

// Truncated Laurent series in q^(1/den) with arbitrary-precision integer
// coefficients.
//
// Exponents are stored scaled by den. Coefficients are exact for every scaled
// exponent below order() and unknown from order() on. Storage is dense from the
// valuation up to the order; the valuation always points at a nonzero
// coefficient, and a zero series has valuation == order and no storage.
class series {
public:
  series() = default;

  static series zero(std::int64_t den, std::int64_t order) {
    series s;
    s.den_ = check_den(den);
    s.val_ = order;
    s.order_ = order;
    return s;
  }

  static series one(std::int64_t den, std::int64_t order) { return monomial(signed_monomial{}, den, order); }

  static series monomial(const signed_monomial& m, std::int64_t den, std::int64_t order) {
    const std::int64_t e = scaled(m.exponent, den);
    series s = zero(den, order);
    if (e < order) {
      s.val_ = e;
      s.c_.assign(static_cast<std::size_t>(order - e), integer(0));
      s.c_[0] = m.sign;
    }
    return s;
  }

  static series constant(const integer& c, std::int64_t den, std::int64_t order) {
    series s = zero(den, order);
    if (order > 0 && c != 0) {
      s.val_ = 0;
      s.c_.assign(static_cast<std::size_t>(order), integer(0));
      s.c_[0] = c;
    }
    return s;
  }

  // Dense coefficients for scaled exponents valuation, valuation+1, ...;
  // entries at or beyond order are dropped.
  static series from_dense(std::int64_t den, std::int64_t valuation, std::int64_t order, std::vector<integer> coeffs) {
    series s;
    s.den_ = check_den(den);
    s.order_ = order;
    s.val_ = valuation;
    if (valuation >= order) {
      s.val_ = order;
      return s;
    }
    coeffs.resize(static_cast<std::size_t>(order - valuation), integer(0));
    s.c_ = std::move(coeffs);
    s.canonicalize();
    return s;
  }

  std::int64_t den() const noexcept { return den_; }
  std::int64_t valuation() const noexcept { return val_; }
  std::int64_t order() const noexcept { return order_; }
  rational valuation_exponent() const { return rational(val_, den_); }
  rational order_exponent() const { return rational(order_, den_); }
  bool is_zero() const noexcept { return c_.empty(); }

  // Coefficients for scaled exponents [valuation, order).
  std::span<const integer> dense() const noexcept { return c_; }

  integer coeff_scaled(std::int64_t e) const {
    if (e >= order_)
      throw order_exceeded("coefficient of q^" + to_string(rational(e, den_)) + " requested, series known below q^" +
                           to_string(order_exponent()));
    if (e < val_) return 0;
    return c_[static_cast<std::size_t>(e - val_)];
  }

  integer coeff(const rational& e) const {
    const rational s = e * den_;
    if (s >= order_)
      throw order_exceeded("coefficient of q^" + to_string(e) + " requested, series known below q^" +
                           to_string(order_exponent()));
    if (!is_integer(s)) return 0;
    return coeff_scaled(s.numerator());
  }

  std::size_t term_count() const {
    return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const integer& c) { return c != 0; }));
  }

  // f(e, c) for every nonzero coefficient, in increasing exponent order.
  template <typename F> void for_each_term(F&& f) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) f(rational(val_ + static_cast<std::int64_t>(i), den_), c_[i]);
  }

  // Same series on a finer lattice; new_den must be a multiple of den().
  series with_denominator(std::int64_t new_den) const {
    if (new_den % den_ != 0)
      throw incompatible_denominator("cannot refine denominator " + std::to_string(den_) + " to " +
                                     std::to_string(new_den));
    if (new_den == den_) return *this;
    const std::int64_t k = new_den / den_;
    series s = zero(new_den, order_ * k);
    if (is_zero()) return s;
    s.val_ = val_ * k;
    s.c_.assign(static_cast<std::size_t>(s.order_ - s.val_), integer(0));
    for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i * static_cast<std::size_t>(k)] = c_[i];
    return s;
  }

  series truncated(std::int64_t order) const {
    if (order > order_)
      throw order_exceeded("series known below scaled order " + std::to_string(order_) + ", truncation to " +
                           std::to_string(order) + " requested");
    series s = *this;
    s.order_ = order;
    if (s.val_ >= order) {
      s.val_ = order;
      s.c_.clear();
    } else {
      s.c_.resize(static_cast<std::size_t>(order - s.val_));
    }
    s.canonicalize();
    return s;
  }

  // Multiplication by q^(delta/den); the order moves with it.
  series shifted(std::int64_t delta) const {
    series s = *this;
    s.val_ += delta;
    s.order_ += delta;
    return s;
  }

  series operator-() const {
    series s = *this;
    for (auto& c : s.c_) c = -c;
    return s;
  }

  series& operator+=(const series& g) { return *this = combine(*this, g, 1); }
  series& operator-=(const series& g) { return *this = combine(*this, g, -1); }
  series& operator*=(const series& g) { return *this = multiply(*this, g); }

  friend series operator+(const series& f, const series& g) { return combine(f, g, 1); }
  friend series operator-(const series& f, const series& g) { return combine(f, g, -1); }
  friend series operator*(const series& f, const series& g) { return multiply(f, g); }

  friend series operator*(const integer& k, const series& f) {
    if (k == 0) return zero(f.den_, f.order_);
    series s = f;
    for (auto& c : s.c_) c *= k;
    return s;
  }

  // Multiplicative inverse; the leading coefficient must be +1 or -1.
  series inverse() const {
    if (is_zero()) throw non_unit_leading_coefficient("cannot invert a series that vanishes to its order");
    const integer& lead = c_[0];
    if (lead != 1 && lead != -1)
      throw non_unit_leading_coefficient("leading coefficient " + lead.get_str() + " is not a unit");
    const std::size_t n = c_.size();
    std::vector<std::size_t> nz;
    for (std::size_t i = 1; i < n; ++i)
      if (c_[i] != 0) nz.push_back(i);
    std::vector<integer> g(n);
    g[0] = lead;
    integer acc;
    for (std::size_t k = 1; k < n; ++k) {
      acc = 0;
      for (std::size_t i : nz) {
        if (i > k) break;
        mpz_addmul(acc.get_mpz_t(), c_[i].get_mpz_t(), g[k - i].get_mpz_t());
      }
      if (lead > 0)
        g[k] = -acc;
      else
        g[k] = acc;
    }
    return from_dense(den_, -val_, order_ - 2 * val_, std::move(g));
  }

  // Substitution q -> q^r for positive rational r, on the coarsest lattice
  // that holds the result.
  series rescale(const rational& r) const {
    if (r <= 0) throw error("rescale factor must be positive");
    const std::int64_t p = r.numerator();
    const std::int64_t d = den_ * r.denominator();
    std::int64_t g = std::gcd(d, order_ * p);
    if (!is_zero()) g = std::gcd(g, val_ * p);
    for (std::size_t i = 0; i < c_.size() && g > 1; ++i)
      if (c_[i] != 0) g = std::gcd(g, (val_ + static_cast<std::int64_t>(i)) * p);
    if (g == 0) g = 1;
    series s = zero(d / g, order_ * p / g);
    if (is_zero()) return s;
    s.val_ = val_ * p / g;
    s.c_.assign(static_cast<std::size_t>(s.order_ - s.val_), integer(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) s.c_[static_cast<std::size_t>((val_ + static_cast<std::int64_t>(i)) * p / g - s.val_)] = c_[i];
    return s;
  }

  friend bool operator==(const series& f, const series& g) {
    return f.den_ == g.den_ && f.val_ == g.val_ && f.order_ == g.order_ && f.c_ == g.c_;
  }

private:
  static std::int64_t check_den(std::int64_t den) {
    if (den <= 0) throw incompatible_denominator("exponent denominator must be positive");
    return den;
  }

  void canonicalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      val_ = order_;
      return;
    }
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
      val_ += static_cast<std::int64_t>(lead);
    }
  }

  static std::pair<series, series> common(const series& f, const series& g) {
    const std::int64_t d = std::lcm(f.den_, g.den_);
    return {f.with_denominator(d), g.with_denominator(d)};
  }

  static series combine(const series& f0, const series& g0, int sign) {
    if (f0.den_ != g0.den_) {
      auto [f, g] = common(f0, g0);
      return combine(f, g, sign);
    }
    const std::int64_t order = std::min(f0.order_, g0.order_);
    const std::int64_t lo = std::min(f0.val_, g0.val_);
    if (lo >= order) return zero(f0.den_, order);
    std::vector<integer> c(static_cast<std::size_t>(order - lo));
    for (std::size_t i = 0; i < f0.c_.size(); ++i) {
      const std::int64_t e = f0.val_ + static_cast<std::int64_t>(i);
      if (e >= order) break;
      c[static_cast<std::size_t>(e - lo)] = f0.c_[i];
    }
    for (std::size_t i = 0; i < g0.c_.size(); ++i) {
      const std::int64_t e = g0.val_ + static_cast<std::int64_t>(i);
      if (e >= order) break;
      if (sign > 0)
        c[static_cast<std::size_t>(e - lo)] += g0.c_[i];
      else
        c[static_cast<std::size_t>(e - lo)] -= g0.c_[i];
    }
    return from_dense(f0.den_, lo, order, std::move(c));
  }

  static series multiply(const series& f0, const series& g0) {
    if (f0.den_ != g0.den_) {
      auto [f, g] = common(f0, g0);
      return multiply(f, g);
    }
    const std::int64_t order = std::min(f0.order_ + g0.val_, g0.order_ + f0.val_);
    if (f0.is_zero() || g0.is_zero()) return zero(f0.den_, order);
    const std::int64_t lo = f0.val_ + g0.val_;
    if (lo >= order) return zero(f0.den_, order);
    // Walk the sparser operand on the outside.
    const series* a = &f0;
    const series* b = &g0;
    if (f0.term_count() > g0.term_count()) std::swap(a, b);
    const std::size_t len = static_cast<std::size_t>(order - lo);
    std::vector<integer> c(len);
    for (std::size_t i = 0; i < a->c_.size() && i < len; ++i) {
      if (a->c_[i] == 0) continue;
      const mpz_srcptr ai = a->c_[i].get_mpz_t();
      const std::size_t jmax = std::min(b->c_.size(), len - i);
      for (std::size_t j = 0; j < jmax; ++j) {
        if (mpz_sgn(b->c_[j].get_mpz_t()) == 0) continue;
        mpz_addmul(c[i + j].get_mpz_t(), ai, b->c_[j].get_mpz_t());
      }
    }
    return from_dense(f0.den_, lo, order, std::move(c));
  }

  std::int64_t den_ = 1;
  std::int64_t val_ = 0;
  std::int64_t order_ = 0;
  std::vector<integer> c_;
};

inline series monomial(const signed_monomial& m, std::int64_t den, std::int64_t order) {
  return series::monomial(m, den, order);
}

inline series invert(const series& f) { return f.inverse(); }

inline series rescale(const series& f, const rational& r) { return f.rescale(r); }

// Product with a signed monomial, exact: the order shifts along.
inline series mul_monomial(const series& f, const signed_monomial& m) {
  const std::int64_t e = scaled(m.exponent, f.den());
  series s = f.shifted(e);
  return m.sign < 0 ? -s : s;
}

// Runs build(working_order) and raises the working order until the result
// is known to `order`, then truncates to exactly `order`. Builders whose
// intermediate factors have negative valuation lose precision in products;
// this recovers it without each builder tracking headroom by hand.
template <typename Build> series at_order(std::int64_t order, Build&& build) {
  std::int64_t working = order;
  for (int attempt = 0; attempt < 16; ++attempt) {
    series s = build(working);
    if (s.order() >= order) return s.truncated(order);
    working += order - s.order();
  }
  throw order_exceeded("could not reach scaled order " + std::to_string(order));
}

struct mismatch {
  rational exponent;
  integer lhs;
  integer rhs;
};

struct comparison {
  std::optional<mismatch> first_mismatch;
  bool ok() const noexcept { return !first_mismatch.has_value(); }
};

// Compares coefficients of every exponent strictly below `order`.
inline comparison eq_to_order(const series& f0, const series& g0, const rational& order) {
  if (order > f0.order_exponent() || order > g0.order_exponent())
    throw order_exceeded("comparison to q^" + to_string(order) + " exceeds a series order (lhs q^" +
                         to_string(f0.order_exponent()) + ", rhs q^" + to_string(g0.order_exponent()) + ")");
  const std::int64_t d = std::lcm(f0.den(), g0.den());
  const series f = f0.with_denominator(d);
  const series g = g0.with_denominator(d);
  const std::int64_t top = ceil(order * d);
  const std::int64_t lo = std::min(f.valuation(), g.valuation());
  for (std::int64_t e = lo; e < top; ++e) {
    integer a = f.coeff_scaled(e);
    integer b = g.coeff_scaled(e);
    if (a != b) return {mismatch{rational(e, d), std::move(a), std::move(b)}};
  }
  return {};
}

// Dense in-place accumulator for sums of many shifted series on one lattice.
class series_accumulator {
public:
  series_accumulator(std::int64_t den, std::int64_t lo, std::int64_t order)
      : den_(den), lo_(std::min(lo, order)), order_(order), c_(static_cast<std::size_t>(order_ - lo_)) {}

  // this += sign * q^(shift/den) * s
  void add(const series& s, std::int64_t shift, int sign) {
    if (s.den() != den_) throw incompatible_denominator("accumulator lattice mismatch");
    order_ = std::min(order_, s.order() + shift);
    if (s.is_zero()) return;
    const std::int64_t start = s.valuation() + shift;
    if (start < lo_) throw order_exceeded("accumulator term below its lower bound");
    const auto d = s.dense();
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::int64_t e = start + static_cast<std::int64_t>(i);
      if (e >= order_) break;
      if (mpz_sgn(d[i].get_mpz_t()) == 0) continue;
      integer& t = c_[static_cast<std::size_t>(e - lo_)];
      if (sign > 0)
        t += d[i];
      else
        t -= d[i];
    }
  }

  std::int64_t order() const noexcept { return order_; }

  series take() && {
    c_.resize(static_cast<std::size_t>(std::max<std::int64_t>(order_ - lo_, 0)));
    return series::from_dense(den_, lo_, order_, std::move(c_));
  }

private:
  std::int64_t den_;
  std::int64_t lo_;
  std::int64_t order_;
  std::vector<integer> c_;
};

inline std::string to_string(const series& f) {
  std::string out;
  f.for_each_term([&](const rational& e, const integer& c) {
    const bool neg = c < 0;
    const integer mag = neg ? integer(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    const bool unit = (mag == 1);
    if (!unit || e == 0) out += mag.get_str();
    if (e != 0) {
      if (!unit) out += "*";
      out += "q";
      if (e != 1) out += "^" + (is_integer(e) ? to_string(e) : "(" + to_string(e) + ")");
    }
  });
  if (out.empty()) out = "0";
  out += " + O(q^" + to_string(f.order_exponent()) + ")";
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const series& f) { return os << to_string(f); }

} // namespace qnahm
