#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qnahm/lattice.hpp"
#include "qnahm/monomial.hpp"
#include "qnahm/products.hpp"
#include "qnahm/series.hpp"

namespace qnahm {

// (u z^degree; base)_inf in the numerator, or its reciprocal.
struct euler_factor {
  signed_monomial u;
  std::int64_t degree = 1;
  signed_monomial base{1, rational(1)};
  bool numerator = false;
};

// theta(theta_arg / z; q^theta_base) * prod(factors), as a Laurent series in z.
struct ct_expr {
  signed_monomial theta_arg;
  rational theta_base{1};
  std::vector<euler_factor> factors;
};

struct ct_options {
  // Values above 1 extend the theta index range past the computed cutoff.
  std::int64_t cutoff_scale = 1;
};

namespace detail {

class ct_evaluator {
public:
  ct_evaluator(const ct_expr& expr, std::int64_t den) : expr_(expr), den_(den) {
    if (expr.theta_base <= 0) throw error("theta base exponent must be positive");
    scaled(expr.theta_base, den_);
    scaled(expr.theta_arg.exponent, den_);
    for (const auto& f : expr.factors) {
      if (f.degree < 1) throw error("Euler factor z-degree must be at least 1");
      if (f.base.exponent <= 0) throw non_convergent_product("Euler factor base must have positive exponent");
      scaled(f.u.exponent, den_);
      scaled(f.base.exponent, den_);
    }
  }

  // Exponent of the theta coefficient paired with z^n.
  rational theta_exponent(std::int64_t n) const {
    return expr_.theta_base * rational(n * (n - 1), 2) + expr_.theta_arg.exponent * n;
  }

  int theta_sign(std::int64_t n) const { return (n % 2 == 0) ? 1 : -expr_.theta_arg.sign; }

  // Valuation of the m-th Euler expansion term of a factor.
  static rational term_valuation(const euler_factor& f, std::int64_t m) {
    rational v = f.u.exponent * m;
    if (f.numerator) v += f.base.exponent * rational(m * (m - 1), 2);
    return v;
  }

  // Lower bound for the valuation of the z^n coefficient of the factor product.
  rational rest_valuation_bound(std::int64_t n) const {
    rational total(0);
    for (const auto& f : expr_.factors) {
      rational best(0);
      for (std::int64_t m = 1; m <= n / f.degree; ++m) best = std::min(best, term_valuation(f, m));
      total += best;
    }
    return total;
  }

  // First theta index from which no term reaches below the order.
  std::int64_t cutoff(std::int64_t order) const {
    const rational top(order, den_);
    rational slope_loss(0);
    for (const auto& f : expr_.factors)
      if (f.u.exponent < 0) slope_loss += -f.u.exponent / f.degree;
    // g(n) = theta_exponent(n) - slope_loss * n is convex and bounds
    // theta_exponent(n) + rest_valuation_bound(n) from below.
    const rational b = expr_.theta_base;
    const rational vertex = rational(1, 2) - (expr_.theta_arg.exponent - slope_loss) / b;
    constexpr std::int64_t cap = 1'000'000;
    for (std::int64_t n = 0; n < cap; ++n) {
      if (rational(n) <= vertex) continue;
      if (theta_exponent(n) - slope_loss * n >= top) return n;
    }
    throw unbounded_ct("theta index cutoff not reached");
  }

  // Worst total valuation drop from the factor expansions up to z^(count-1).
  rational factor_loss(std::int64_t count) const {
    rational loss(0);
    for (const auto& f : expr_.factors) {
      rational worst(0);
      for (std::int64_t m = 1; m * f.degree < count; ++m) worst = std::min(worst, term_valuation(f, m));
      loss -= worst;
    }
    return loss;
  }

  // Scaled order to which every factor expansion must be known so that the
  // z^0 coefficient is exact below `order`.
  std::int64_t working_order(std::int64_t order, std::int64_t nmax) const {
    rational min_theta(0);
    for (std::int64_t n = 0; n < nmax; ++n) min_theta = std::min(min_theta, theta_exponent(n));
    return order + ceil((factor_loss(nmax) - min_theta) * den_);
  }

  // m-th term of the Euler expansion of a factor, z^(degree*m) stripped.
  series euler_term(const euler_factor& f, std::int64_t m, std::int64_t working) const {
    signed_monomial mono;
    if (f.numerator) {
      // (-u)^m Q^(m(m-1)/2) / (Q;Q)_m
      mono = pow(-f.u, m) * pow(f.base, m * (m - 1) / 2);
    } else {
      // u^m / (Q;Q)_m
      mono = pow(f.u, m);
    }
    const std::int64_t shift = scaled(mono.exponent, den_);
    return mul_monomial(poch_finite(f.base, f.base, m, den_, working - shift, -1), mono);
  }

  // Coefficients of z^0 .. z^(count-1) in the factor product.
  std::vector<series> rest_table(std::int64_t count, std::int64_t working) const {
    std::vector<series> table(static_cast<std::size_t>(count), series::zero(den_, working));
    if (count == 0) return table;
    table[0] = series::one(den_, working);
    for (const auto& f : expr_.factors) {
      std::vector<series> terms;
      for (std::int64_t m = 0; m * f.degree < count; ++m) terms.push_back(euler_term(f, m, working));
      std::vector<series> next(static_cast<std::size_t>(count), series::zero(den_, working));
      for (std::int64_t n = 0; n < count; ++n) {
        for (std::int64_t m = 0; m * f.degree <= n; ++m) {
          const series& prev = table[static_cast<std::size_t>(n - m * f.degree)];
          if (prev.is_zero()) continue;
          next[static_cast<std::size_t>(n)] += terms[static_cast<std::size_t>(m)] * prev;
        }
      }
      table = std::move(next);
    }
    return table;
  }

  series evaluate(std::int64_t order, const ct_options& opts) const {
    const std::int64_t nmax = cutoff(order) * std::max<std::int64_t>(1, opts.cutoff_scale);
    const std::int64_t base_working = working_order(order, nmax);
    return at_order(order, [&](std::int64_t working) {
      const std::int64_t w = base_working + (working - order);
      const auto table = rest_table(nmax, w);
      series total = series::zero(den_, order);
      for (std::int64_t n = 0; n < nmax; ++n) {
        const auto& rest = table[static_cast<std::size_t>(n)];
        if (rest.is_zero()) continue;
        total += mul_monomial(rest, signed_monomial{theta_sign(n), theta_exponent(n)});
      }
      return total;
    });
  }

private:
  const ct_expr& expr_;
  std::int64_t den_;
};

} // namespace detail

// Coefficient of z^n in the product of Euler factors, exact below `order`.
inline series zcoeff_rest(const ct_expr& expr, std::int64_t n, std::int64_t den, std::int64_t order) {
  if (n < 0) throw error("z-degree must be nonnegative");
  detail::ct_evaluator ev(expr, den);
  return at_order(order, [&](std::int64_t working) {
    const std::int64_t w = working + ceil(ev.factor_loss(n + 1) * den);
    return ev.rest_table(n + 1, w)[static_cast<std::size_t>(n)];
  });
}

// Constant term in z of the expression, exact below `order`.
inline series ct(const ct_expr& expr, std::int64_t den, std::int64_t order, const ct_options& opts = {}) {
  return detail::ct_evaluator(expr, den).evaluate(order, opts);
}

inline comparison ct_equiv_lattice(const ct_expr& expr, const lattice_sum_spec& spec, std::int64_t den,
                                   std::int64_t order) {
  return eq_to_order(ct(expr, den, order), lattice_sum(spec, den, order), rational(order, den));
}

} // namespace qnahm
