#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qnahm/monomial.hpp"
#include "qnahm/series.hpp"

namespace qnahm {

// (a_1, ..., a_m; base)_length raised to `power` (+1 or -1). A missing length
// means the infinite product.
struct poch_spec {
  std::vector<signed_monomial> args;
  signed_monomial base{1, rational(1)};
  std::optional<std::int64_t> length;
  int power = 1;
};

namespace detail {

// Every factor monomial arg * base^k of the product that is not congruent to
// 1 below the scaled order.
inline std::vector<signed_monomial> poch_factors(const poch_spec& spec, std::int64_t den, std::int64_t order) {
  std::vector<signed_monomial> out;
  const rational top(order, den);
  if (spec.length) {
    if (*spec.length < 0) throw negative_length("Pochhammer length " + std::to_string(*spec.length) + " is negative");
    for (const auto& a : spec.args)
      for (std::int64_t k = 0; k < *spec.length; ++k) {
        const signed_monomial m = a * pow(spec.base, k);
        if (spec.base.exponent > 0 && m.exponent >= top) break;
        out.push_back(m);
      }
    return out;
  }
  if (spec.base.exponent <= 0)
    throw non_convergent_product("infinite product with base " + to_string(spec.base) + " does not converge");
  for (const auto& a : spec.args) {
    if (a.exponent < 0)
      throw non_convergent_product("infinite product with argument " + to_string(a) + " does not converge");
    for (std::int64_t k = 0;; ++k) {
      const signed_monomial m = a * pow(spec.base, k);
      if (m.exponent >= top) break;
      out.push_back(m);
    }
  }
  return out;
}

} // namespace detail

inline series poch(const poch_spec& spec, std::int64_t den, std::int64_t order) {
  if (spec.power != 1 && spec.power != -1) throw error("Pochhammer power must be +1 or -1");
  for (const auto& a : spec.args) scaled(a.exponent, den);
  scaled(spec.base.exponent, den);

  const auto factors = detail::poch_factors(spec, den, order);
  const bool fast = std::all_of(factors.begin(), factors.end(), [&](const signed_monomial& m) {
    return spec.power > 0 ? m.exponent >= 0 : m.exponent > 0;
  });
  if (fast) {
    if (order <= 0) return series::zero(den, order);
    const std::size_t n = static_cast<std::size_t>(order);
    std::vector<integer> c(n);
    c[0] = 1;
    for (const auto& m : factors) {
      const std::int64_t e = scaled(m.exponent, den);
      if (e >= order) continue;
      const std::size_t s = static_cast<std::size_t>(e);
      if (spec.power > 0) {
        if (s == 0) {
          // constant factor 1 - sign: either 0 or 2
          if (m.sign > 0) return series::zero(den, order);
          for (auto& x : c) x *= 2;
          continue;
        }
        for (std::size_t i = n; i-- > s;) {
          if (m.sign > 0)
            c[i] -= c[i - s];
          else
            c[i] += c[i - s];
        }
      } else {
        for (std::size_t i = s; i < n; ++i) {
          if (m.sign > 0)
            c[i] += c[i - s];
          else
            c[i] -= c[i - s];
        }
      }
    }
    return series::from_dense(den, 0, order, std::move(c));
  }

  if (spec.power < 0)
    for (const auto& m : factors)
      if (m.exponent == 0)
        throw non_unit_leading_coefficient("Pochhammer factor 1 - (" + to_string(m) + ") is not invertible");

  return at_order(order, [&](std::int64_t working) {
    series acc = series::one(den, working);
    for (const auto& m : detail::poch_factors(spec, den, working)) {
      series binom = series::one(den, working) - series::monomial(m, den, working);
      acc *= spec.power > 0 ? binom : binom.inverse();
    }
    return acc;
  });
}

// (a_1, ..., a_m; base)_inf
inline series poch_inf(std::vector<signed_monomial> args, signed_monomial base, std::int64_t den, std::int64_t order,
                       int power = 1) {
  return poch(poch_spec{std::move(args), base, std::nullopt, power}, den, order);
}

// (a; base)_n
inline series poch_finite(signed_monomial arg, signed_monomial base, std::int64_t n, std::int64_t den,
                          std::int64_t order, int power = 1) {
  return poch(poch_spec{{arg}, base, n, power}, den, order);
}

// Jacobi triple product side: sum over all integers n of
// (-1)^n q^(b n(n-1)/2) c^n.
inline series theta_sum(const signed_monomial& c, const rational& b, std::int64_t den, std::int64_t order) {
  if (b <= 0) throw error("theta base exponent must be positive");
  const std::int64_t bs = scaled(b, den);
  const std::int64_t cs = scaled(c.exponent, den);
  auto exponent = [&](std::int64_t n) { return bs * (n * (n - 1) / 2) + cs * n; };
  auto sign = [&](std::int64_t n) { return (n % 2 == 0) ? 1 : -c.sign; };

  std::vector<std::pair<std::int64_t, int>> terms;
  const std::int64_t start = floor(rational(1, 2) - c.exponent / b);
  for (std::int64_t n = start; exponent(n) < order; --n) terms.emplace_back(exponent(n), sign(n));
  for (std::int64_t n = start + 1; exponent(n) < order; ++n) terms.emplace_back(exponent(n), sign(n));
  if (terms.empty()) return series::zero(den, order);

  std::int64_t lo = order;
  for (const auto& t : terms) lo = std::min(lo, t.first);
  std::vector<integer> coeffs(static_cast<std::size_t>(order - lo));
  for (const auto& [e, s] : terms) coeffs[static_cast<std::size_t>(e - lo)] += s;
  return series::from_dense(den, lo, order, std::move(coeffs));
}

struct theta_reduction {
  signed_monomial prefactor;
  signed_monomial reduced;
};

// Shifts the theta argument by a multiple of the base into (0, b] using
// theta(z q^(kb); q^b) = (-1)^k q^(-b k(k-1)/2) z^(-k) theta(z; q^b).
inline theta_reduction theta_reduce(const signed_monomial& c, const rational& b) {
  if (b <= 0) throw error("theta base exponent must be positive");
  const std::int64_t k = ceil(c.exponent / b) - 1;
  const signed_monomial z{c.sign, c.exponent - b * k};
  const int sign = ((k % 2 == 0) ? 1 : -1) * ((k % 2 == 0) ? 1 : z.sign);
  const rational e = -b * rational(k * (k - 1), 2) - z.exponent * k;
  return {signed_monomial{sign, e}, z};
}

// theta(c; q^b) = (q^b, c, q^b/c; q^b)_inf after reducing c into (0, b].
inline series theta_prod(const signed_monomial& c, const rational& b, std::int64_t den, std::int64_t order) {
  const auto [prefactor, z] = theta_reduce(c, b);
  if (z.exponent <= 0 || z.exponent > b)
    throw non_convergent_product("theta argument " + to_string(c) + " could not be reduced");
  const signed_monomial qb{1, b};
  const std::int64_t shift = scaled(prefactor.exponent, den);
  series body = poch_inf({qb, z, qb * inverse(z)}, qb, den, order - shift);
  return mul_monomial(body, prefactor);
}

} // namespace qnahm
