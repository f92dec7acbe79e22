#pragma once

// Slow, independent reference computations. Nothing here calls the series
// engine: polynomials are plain maps from scaled exponent to coefficient.

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using big = mpz_class;

// Truncated polynomial in q^(1/den): exponents are scaled, kept below `order`.
struct poly {
  std::int64_t order = 0;
  std::map<std::int64_t, big> c;

  void add(std::int64_t e, const big& v) {
    if (e >= order || v == 0) return;
    auto& slot = c[e];
    slot += v;
    if (slot == 0) c.erase(e);
  }

  big at(std::int64_t e) const {
    auto it = c.find(e);
    return it == c.end() ? big(0) : it->second;
  }
};

inline poly one(std::int64_t order) {
  poly p{order, {}};
  p.add(0, 1);
  return p;
}

inline poly mul(const poly& a, const poly& b, std::int64_t order) {
  poly out{order, {}};
  for (const auto& [ea, ca] : a.c)
    for (const auto& [eb, cb] : b.c) out.add(ea + eb, ca * cb);
  return out;
}

// Multiplies by (1 - sign q^e) for e >= 0.
inline poly times_binomial(const poly& p, int sign, std::int64_t e) {
  poly out = p;
  for (const auto& [k, v] : p.c) out.add(k + e, sign > 0 ? big(-v) : v);
  return out;
}

// Multiplies by 1/(1 - sign q^e) for e > 0 via the geometric series.
inline poly times_geometric(const poly& p, int sign, std::int64_t e) {
  if (e <= 0) throw std::invalid_argument("geometric factor needs a positive exponent");
  poly out{p.order, {}};
  for (const auto& [k, v] : p.c) {
    big term = v;
    for (std::int64_t x = k; x < p.order; x += e) {
      out.add(x, term);
      if (sign < 0) term = -term;
    }
  }
  return out;
}

struct factor {
  int sign;        // the factor is 1 - sign q^exp
  std::int64_t exp; // scaled
};

// prod (1 - s q^e)^power over the given factors, factor by factor.
inline poly product(const std::vector<factor>& fs, std::int64_t order, int power = 1) {
  poly p = one(order);
  for (const auto& f : fs) p = power > 0 ? times_binomial(p, f.sign, f.exp) : times_geometric(p, f.sign, f.exp);
  return p;
}

// Factors of (a; Q)_n with a = sa q^ea, Q = sQ q^eQ (all scaled); n < 0 means
// as many as matter below `order`.
inline std::vector<factor> poch_factors(int sa, std::int64_t ea, int sq, std::int64_t eq, std::int64_t n,
                                        std::int64_t order) {
  std::vector<factor> out;
  int s = sa;
  std::int64_t e = ea;
  for (std::int64_t k = 0; n < 0 || k < n; ++k) {
    if (n < 0 && e >= order) break;
    out.push_back({s, e});
    s *= sq;
    e += eq;
  }
  return out;
}

// Number of partitions of n, counted by recursion on the largest part.
inline big partitions(std::int64_t n, std::int64_t largest = -1) {
  if (largest < 0) largest = n;
  if (n == 0) return 1;
  big total = 0;
  for (std::int64_t k = std::min(n, largest); k >= 1; --k) total += partitions(n - k, k);
  return total;
}

// Number of partitions of n into distinct parts, each a multiple of m.
inline big distinct_multiples(std::int64_t n, std::int64_t m, std::int64_t below = -1) {
  if (n == 0) return 1;
  if (below < 0) below = n + 1;
  big total = 0;
  for (std::int64_t k = m; k < below && k <= n; k += m) total += distinct_multiples(n - k, m, k);
  return total;
}

// 1 / prod_{k=1..n} (1 - q^(step k)), exponents unscaled.
inline poly inv_qfact(std::int64_t n, std::int64_t step, std::int64_t order) {
  poly p = one(order);
  for (std::int64_t k = 1; k <= n; ++k) p = times_geometric(p, 1, step * k);
  return p;
}

// sum over 0 <= i, j < box of sign(i,j) q^expo(i,j) / (den_i(i) den_j(j)),
// where expo returns scaled exponents and the denominators are given as
// factor lists. Terms with exponent >= order are skipped.
inline poly double_sum(std::int64_t box, std::int64_t order,
                       const std::function<std::int64_t(std::int64_t, std::int64_t)>& expo,
                       const std::function<int(std::int64_t, std::int64_t)>& sign,
                       const std::function<std::vector<factor>(std::int64_t, std::int64_t)>& denominators) {
  poly total{order, {}};
  for (std::int64_t i = 0; i < box; ++i)
    for (std::int64_t j = 0; j < box; ++j) {
      const std::int64_t e = expo(i, j);
      if (e >= order) continue;
      poly term = product(denominators(i, j), order - e, -1);
      const int s = sign(i, j);
      for (const auto& [k, v] : term.c) total.add(k + e, s > 0 ? v : big(-v));
    }
  return total;
}

// Laurent polynomial in z with q-coefficients, dense on a window
// z in [-w, w] and scaled q-exponent in [lo, hi).
class bivariate {
public:
  bivariate(std::int64_t w, std::int64_t lo, std::int64_t hi)
      : w_(w), lo_(lo), hi_(hi), c_(static_cast<std::size_t>((2 * w + 1) * (hi - lo))) {}

  big& at(std::int64_t z, std::int64_t e) { return c_[index(z, e)]; }
  const big& at(std::int64_t z, std::int64_t e) const { return c_[index(z, e)]; }
  bool inside(std::int64_t z, std::int64_t e) const { return z >= -w_ && z <= w_ && e >= lo_ && e < hi_; }

  // *= (1 - s q^e z^d)
  void times_binomial(int s, std::int64_t e, std::int64_t d) {
    for (std::int64_t z = w_; z >= -w_; --z)
      for (std::int64_t x = hi_ - 1; x >= lo_; --x) {
        const std::int64_t zs = z - d, xs = x - e;
        if (!inside(zs, xs)) continue;
        const big& src = at(zs, xs);
        if (src == 0) continue;
        if (s > 0)
          at(z, x) -= src;
        else
          at(z, x) += src;
      }
  }

  // *= 1/(1 - s q^e z^d), d >= 1: c[z] += s q^e c[z - d], sweeping upward in z
  void times_geometric(int s, std::int64_t e, std::int64_t d) {
    for (std::int64_t z = -w_; z <= w_; ++z)
      for (std::int64_t x = lo_; x < hi_; ++x) {
        const std::int64_t zs = z - d, xs = x - e;
        if (!inside(zs, xs)) continue;
        const big& src = at(zs, xs);
        if (src == 0) continue;
        if (s > 0)
          at(z, x) += src;
        else
          at(z, x) -= src;
      }
  }

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }

private:
  std::size_t index(std::int64_t z, std::int64_t e) const {
    return static_cast<std::size_t>((z + w_) * (hi_ - lo_) + (e - lo_));
  }
  std::int64_t w_, lo_, hi_;
  std::vector<big> c_;
};

struct ct_factor {
  int sign;            // argument u = sign q^exp z^degree
  std::int64_t exp;    // scaled
  std::int64_t degree;
  int base_sign;
  std::int64_t base_exp; // scaled, positive
  bool numerator;
};

// CT in z of theta(sc q^ec / z; q^b) * prod factors, everything scaled by the
// same denominator. Each factor is multiplied in as the literal product
// prod_k (1 - u Q^k z^d)^(+-1); the theta part is its defining sum.
inline poly ct(int sc, std::int64_t ec, std::int64_t b, const std::vector<ct_factor>& fs, std::int64_t order) {
  // Worst q-exponent loss per unit of z-degree from the factors.
  double slope = 0;
  for (const auto& f : fs)
    if (f.exp < 0) slope += double(-f.exp) / double(f.degree);
  // Window: the theta index n pairs with z^n from the factors; past w the
  // theta exponent outruns any loss.
  std::int64_t w = 0;
  while (!(double(b) * double(w * (w - 1)) / 2 + double(ec * w) - slope * double(w) >= double(order) &&
           double(b) * double(w) + double(ec) - slope >= 0))
    ++w;
  w += 2;
  std::int64_t loss = 0;
  for (const auto& f : fs)
    if (f.exp < 0) loss += -f.exp * (w / f.degree + 1);
  std::int64_t theta_min = 0;
  for (std::int64_t n = -w; n <= w; ++n) theta_min = std::min(theta_min, b * (n * (n - 1) / 2) + ec * n);
  const std::int64_t lo = theta_min - loss;
  const std::int64_t hi = order + loss - theta_min + 1;

  bivariate acc(w, lo, hi);
  for (std::int64_t n = -w; n <= w; ++n) {
    const std::int64_t e = b * (n * (n - 1) / 2) + ec * n;
    if (e < lo || e >= hi) continue;
    int s = (n % 2 == 0) ? 1 : -1;
    if (n % 2 != 0 && sc < 0) s = -s;
    acc.at(-n, e) += s;
  }
  for (const auto& f : fs) {
    int s = f.sign;
    std::int64_t e = f.exp;
    for (std::int64_t k = 0; e < hi + loss; ++k) {
      if (f.numerator)
        acc.times_binomial(s, e, f.degree);
      else
        acc.times_geometric(s, e, f.degree);
      s *= f.base_sign;
      e += f.base_exp;
    }
  }
  poly out{order, {}};
  for (std::int64_t x = lo; x < std::min(order, hi); ++x) out.add(x, acc.at(0, x));
  return out;
}

} // namespace oracle
