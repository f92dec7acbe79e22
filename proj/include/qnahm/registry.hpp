#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qnahm/catalog.hpp"
#include "qnahm/ct.hpp"
#include "qnahm/lattice.hpp"
#include "qnahm/products.hpp"
#include "qnahm/series.hpp"

namespace qnahm {

// A builder receives a scaled working order and returns a series that should
// be known at least that far; the registry raises the working order when
// negative valuations eat into it.
using side_builder = std::function<series(std::int64_t)>;

struct identity_record {
  std::string id;
  std::string tag;
  std::string summary;
  rational default_order;
  std::int64_t den = 1;
  side_builder lhs;
  side_builder rhs;
};

namespace detail {

using mono_list = std::vector<signed_monomial>;

inline series pinf(const mono_list& args, const signed_monomial& base, std::int64_t den, std::int64_t order,
                   int power = 1) {
  return poch_inf(args, base, den, order, power);
}

inline series sq(const series& s) { return s * s; }

// sum over n >= 0 of q^(quad * n(n-1)/2) z^n / (q;q)_n, term by term.
inline series euler_term_sum(const signed_monomial& z, std::int64_t quad, std::int64_t den, std::int64_t order) {
  if (z.exponent <= 0) throw error("Euler sum argument must have positive exponent");
  series total = series::zero(den, order);
  for (std::int64_t n = 0;; ++n) {
    const signed_monomial term = pow(z, n) * q_pow(quad * n * (n - 1) / 2);
    if (term.exponent * den >= order) break;
    const std::int64_t shift = scaled(term.exponent, den);
    total += mul_monomial(poch_finite(q_pow(1), q_pow(1), n, den, order - shift, -1), term);
  }
  return total;
}

// q-Chu-Vandermonde right side:
// sum_k q^((i-k)(j-k)) / ((q;q)_k (q;q)_(i-k) (q;q)_(j-k)).
inline series chu_sum(std::int64_t i, std::int64_t j, std::int64_t order) {
  series total = series::zero(1, order);
  for (std::int64_t k = 0; k <= std::min(i, j); ++k) {
    const std::int64_t e = (i - k) * (j - k);
    series t = poch_finite(q_pow(1), q_pow(1), k, 1, order, -1) * poch_finite(q_pow(1), q_pow(1), i - k, 1, order, -1) *
               poch_finite(q_pow(1), q_pow(1), j - k, 1, order, -1);
    total += t.shifted(e);
  }
  return total;
}

inline side_builder lattice_side(lattice_sum_spec spec, std::int64_t den) {
  return [spec = std::move(spec), den](std::int64_t order) { return lattice_sum(spec, den, order); };
}

inline side_builder ct_side(ct_expr expr, std::int64_t den) {
  return [expr = std::move(expr), den](std::int64_t order) { return ct(expr, den, order); };
}

// (-q^3;q^3)_inf * inner
inline side_builder times_neg_q3(side_builder inner) {
  return [inner = std::move(inner)](std::int64_t order) { return pinf({q_pow(3, -1)}, q_pow(3), 1, order) * inner(order); };
}

// Theta function on the Jacobi triple product side at denominator den.
inline series theta_series(const signed_monomial& c, const rational& b, std::int64_t den, std::int64_t order) {
  return theta_sum(c, b, den, order);
}

inline std::string rat_label(const rational& r) { return to_string(r); }

struct thm11_case {
  rational alpha;
  rational beta;
  signed_monomial x;
};

// Deterministic parameter draws for the transformation: alpha in
// {1/3, 1/2, 1, 3/2}, beta in [-2, 2] on the 1/6 lattice, x in
// {q^(1/2), q, q^2, -q}. Uses raw engine output so every platform agrees.
inline std::vector<thm11_case> thm11_cases(std::size_t count = 20) {
  const rational alphas[] = {rational(1, 3), rational(1, 2), rational(1), rational(3, 2)};
  const signed_monomial xs[] = {q_pow(rational(1, 2)), q_pow(1), q_pow(2), q_pow(1, -1)};
  std::mt19937_64 rng(20240611);
  std::vector<thm11_case> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto a = alphas[rng() % 4];
    const auto b = rational(static_cast<std::int64_t>(rng() % 25) - 12, 6);
    const auto x = xs[rng() % 4];
    out.push_back({a, b, x});
  }
  return out;
}

inline std::int64_t thm11_den(const thm11_case& c) {
  std::int64_t d = 2;
  d = lcm_den(d, c.alpha);
  d = lcm_den(d, c.beta);
  d = lcm_den(d, c.x.exponent);
  return d;
}

inline identity_record thm11_record(std::string id, const sequence_spec& seq, const signed_monomial& x,
                                    std::int64_t den, rational order, std::string summary) {
  const auto sides = thm11_pair(seq, x);
  identity_record r;
  r.id = std::move(id);
  r.tag = "transformation";
  r.summary = std::move(summary);
  r.default_order = order;
  r.den = den;
  r.lhs = [lhs = sides.lhs, den](std::int64_t t) { return lattice_sum(lhs, den, t); };
  r.rhs = [rhs = sides.rhs, pre = sides.rhs_prefactor, den](std::int64_t t) {
    return poch(pre, den, t) * lattice_sum(rhs, den, t);
  };
  return r;
}

inline std::vector<identity_record> build_registry() {
  using namespace catalog;
  std::vector<identity_record> reg;
  auto add = [&](std::string id, std::string tag, std::string summary, rational order, std::int64_t den,
                 side_builder lhs, side_builder rhs) {
    reg.push_back({std::move(id), std::move(tag), std::move(summary), order, den, std::move(lhs), std::move(rhs)});
  };

  // Rogers-Ramanujan
  add("rr.1", "rogers-ramanujan", "sum q^(n^2)/(q;q)_n = 1/(q,q^4;q^5)_inf", 200, 1,
      lattice_side(single_sum(2, 0, q_pow(1)), 1),
      [](std::int64_t t) { return pinf({q_pow(1), q_pow(4)}, q_pow(5), 1, t, -1); });
  add("rr.2", "rogers-ramanujan", "sum q^(n(n+1))/(q;q)_n = 1/(q^2,q^3;q^5)_inf", 200, 1,
      lattice_side(single_sum(2, 1, q_pow(1)), 1),
      [](std::int64_t t) { return pinf({q_pow(2), q_pow(3)}, q_pow(5), 1, t, -1); });

  // Example 5 product conjecture
  add("wang.s1", "example5", "S1 = 3 theta-quotient - mod-30 quotient", 300, 1, lattice_side(s1(), 1),
      [](std::int64_t t) {
        const series inv3 = pinf({q_pow(3)}, q_pow(3), 1, t, -1);
        series a = pinf({q_pow(6)}, q_pow(6), 1, t) * pinf({q_pow(18), q_pow(27), q_pow(45)}, q_pow(45), 1, t) *
                   sq(inv3);
        series b = pinf({q_pow(4), q_pow(6), q_pow(10)}, q_pow(10), 1, t) *
                   pinf({q_pow(1), q_pow(5), q_pow(11), q_pow(19), q_pow(25), q_pow(29)}, q_pow(30), 1, t) * inv3 *
                   pinf({q_pow(3), q_pow(27)}, q_pow(30), 1, t, -1);
        return integer(3) * a - b;
      });
  add("wang.s2", "example5", "S2 = 3 q^2 theta-quotient + mod-30 quotient", 300, 1, lattice_side(s2(), 1),
      [](std::int64_t t) {
        const series inv3 = pinf({q_pow(3)}, q_pow(3), 1, t, -1);
        series a = pinf({q_pow(6)}, q_pow(6), 1, t) * pinf({q_pow(9), q_pow(36), q_pow(45)}, q_pow(45), 1, t) *
                   sq(inv3);
        series b = pinf({q_pow(2), q_pow(8), q_pow(10)}, q_pow(10), 1, t) *
                   pinf({q_pow(5), q_pow(7), q_pow(13), q_pow(17), q_pow(23), q_pow(25)}, q_pow(30), 1, t) * inv3 *
                   pinf({q_pow(9), q_pow(21)}, q_pow(30), 1, t, -1);
        return integer(3) * a.shifted(2) + b;
      });

  // Example 10 products
  add("vz.s3", "example10", "S3 = (q^45;q^45)/(q^3;q^3) (2(q^18,q^27) + q(q^12,q^33) + q^4(q^3,q^42))", 300, 1,
      lattice_side(s3(), 1), [](std::int64_t t) {
        const series pre = pinf({q_pow(45)}, q_pow(45), 1, t) * pinf({q_pow(3)}, q_pow(3), 1, t, -1);
        series inner = integer(2) * pinf({q_pow(18), q_pow(27)}, q_pow(45), 1, t) +
                       pinf({q_pow(12), q_pow(33)}, q_pow(45), 1, t).shifted(1) +
                       pinf({q_pow(3), q_pow(42)}, q_pow(45), 1, t).shifted(4);
        return pre * inner;
      });
  add("vz.s4", "example10", "S4 = (q^45;q^45)/(q^3;q^3) ((q^21,q^24) - q^3(q^6,q^39) + 2q^2(q^9,q^36))", 300, 1,
      lattice_side(s4(), 1), [](std::int64_t t) {
        const series pre = pinf({q_pow(45)}, q_pow(45), 1, t) * pinf({q_pow(3)}, q_pow(3), 1, t, -1);
        series inner = pinf({q_pow(21), q_pow(24)}, q_pow(45), 1, t) -
                       pinf({q_pow(6), q_pow(39)}, q_pow(45), 1, t).shifted(3) +
                       integer(2) * pinf({q_pow(9), q_pow(36)}, q_pow(45), 1, t).shifted(2);
        return pre * inner;
      });

  // Nahm data of both examples against the q^3-base sums
  {
    const rational_matrix a5 = {{rational(1, 3), rational(-1, 3)}, {rational(-1, 3), rational(4, 3)}};
    const rational_matrix a10 = {{rational(4, 3), rational(2, 3)}, {rational(2, 3), rational(4, 3)}};
    auto nahm_side = [](rational_matrix a, std::vector<rational> b) -> side_builder {
      return [a = std::move(a), b = std::move(b)](std::int64_t t) {
        return nahm_sum(a, b, 0, 6, 2 * t).rescale(3).with_denominator(1);
      };
    };
    add("nahm.ex5.b1", "nahm", "f_{A,B,0}(q^3) = S1 for Example 5, B = (-1/6, 2/3)", 300, 1,
        nahm_side(a5, {rational(-1, 6), rational(2, 3)}), lattice_side(s1(), 1));
    add("nahm.ex5.b2", "nahm", "f_{A,B,0}(q^3) = S2 for Example 5, B = (1/2, 0)", 300, 1,
        nahm_side(a5, {rational(1, 2), 0}), lattice_side(s2(), 1));
    add("nahm.ex10.b1", "nahm", "f_{A,B,0}(q^3) = S3 for Example 10, B = (-2/3, -1/3)", 300, 1,
        nahm_side(a10, {rational(-2, 3), rational(-1, 3)}), lattice_side(s3(), 1));
    add("nahm.ex10.b2", "nahm", "f_{A,B,0}(q^3) = S3 for Example 10, B = (-1/3, -2/3)", 300, 1,
        nahm_side(a10, {rational(-1, 3), rational(-2, 3)}), lattice_side(s3(), 1));
    add("nahm.ex10.b3", "nahm", "f_{A,B,0}(q^3) = S4 for Example 10, B = (0, 0)", 300, 1,
        nahm_side(a10, {0, 0}), lattice_side(s4(), 1));
  }

  // Two-sided transformation with a_k = q^(alpha k^2 + beta k)
  {
    const auto cases = thm11_cases();
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const auto& c = cases[i];
      reg.push_back(thm11_record("thm11.q" + std::to_string(i + 1), sequence_spec::quadratic(c.alpha, c.beta), c.x,
                                 thm11_den(c), 100,
                                 "alpha=" + rat_label(c.alpha) + " beta=" + rat_label(c.beta) + " x=" + to_string(c.x)));
    }
    reg.push_back(thm11_record("thm11.frac", sequence_spec::quadratic(rational(1, 6), rational(-1, 12)), q_pow(1), 12,
                               100, "alpha=1/6 beta=-1/12 x=q"));
    reg.push_back(thm11_record("thm11.f1", sequence_spec::finite({{0, q_pow(0)}}), q_pow(1), 1, 100,
                               "a_k = [k = 0], x = q"));
    reg.push_back(thm11_record("thm11.f2",
                               sequence_spec::finite({{0, q_pow(0)}, {1, q_pow(2, -1)}, {-2, q_pow(rational(1, 2))}}),
                               q_pow(rational(1, 2)), 2, 100, "a_0 = 1, a_1 = -q^2, a_-2 = q^(1/2), x = q^(1/2)"));
    reg.push_back(thm11_record("thm11.f3", sequence_spec::finite({{3, q_pow(1)}, {-1, q_pow(0, -1)}}), q_pow(1, -1),
                               1, 100, "a_3 = q, a_-1 = -1, x = -q"));
  }

  // Index change at x = q, written with (q^2;q^2)_j on the right
  {
    const std::pair<rational, rational> params[] = {{rational(1, 2), rational(-1, 2)},
                                                    {rational(1, 2), rational(3, 2)},
                                                    {rational(1), rational(0)},
                                                    {rational(3, 2), rational(-1)},
                                                    {rational(1, 3), rational(1, 6)}};
    int k = 0;
    for (const auto& [a, b] : params) {
      const std::int64_t den = lcm_den(lcm_den(1, a), b);
      lattice_sum_spec lhs = double_sum(2 * a, -2 * a, 2 * a + 1, b, -b + rational(1, 2), q_pow(1), q_pow(1));
      lattice_sum_spec rhs = double_sum(2 * a, -2 * a + 1, 2 * a + 1, b, -b + rational(1, 2), q_pow(1), q_pow(2));
      add("idxchg.c" + std::to_string(++k), "transformation",
          "index change with a=" + rat_label(a) + " b=" + rat_label(b), 150, den, lattice_side(lhs, den),
          [rhs, den](std::int64_t t) { return pinf({q_pow(1, -1)}, q_pow(1), den, t) * lattice_sum(rhs, den, t); });
    }
  }

  // Examples 5 and 10 differ by (-q^3;q^3)_inf
  add("rel.s1s3", "relation", "S1 = (-q^3;q^3)_inf S3", 300, 1, lattice_side(s1(), 1),
      times_neg_q3(lattice_side(s3(), 1)));
  add("rel.s2s4", "relation", "S2 = (-q^3;q^3)_inf S4", 300, 1, lattice_side(s2(), 1),
      times_neg_q3(lattice_side(s4(), 1)));

  // Product forms through Rogers' mod-20 identities
  {
    auto prefactor = [](std::int64_t t) {
      return pinf({q_pow(4)}, q_pow(4), 1, t) * pinf({q_pow(3)}, q_pow(3), 1, t, -1) *
             pinf({q_pow(6)}, q_pow(12), 1, t, -1);
    };
    add("thm13.s1", "product-form",
        "S1 = (q^4;q^4)/((q^3;q^3)(q^6;q^12)) (2(-q^4;q^4)^2/(q^24,q^96;q^120) + q(-q^2;q^4)^2/(q^12,-q^18;-q^30))",
        300, 1, lattice_side(s1(), 1), [prefactor](std::int64_t t) {
          series a = integer(2) * sq(pinf({q_pow(4, -1)}, q_pow(4), 1, t)) *
                     pinf({q_pow(24), q_pow(96)}, q_pow(120), 1, t, -1);
          series b = sq(pinf({q_pow(2, -1)}, q_pow(4), 1, t)) *
                     pinf({q_pow(12), q_pow(18, -1)}, q_pow(30, -1), 1, t, -1);
          return prefactor(t) * (a + b.shifted(1));
        });
    add("thm13.s2", "product-form",
        "S2 = (q^4;q^4)/((q^3;q^3)(q^6;q^12)) ((-q^2;q^4)^2/(-q^6,q^24;-q^30) + 2q^5(-q^4;q^4)^2/(q^48,q^72;q^120))",
        300, 1, lattice_side(s2(), 1), [prefactor](std::int64_t t) {
          series a = sq(pinf({q_pow(2, -1)}, q_pow(4), 1, t)) *
                     pinf({q_pow(6, -1), q_pow(24)}, q_pow(30, -1), 1, t, -1);
          series b = integer(2) * sq(pinf({q_pow(4, -1)}, q_pow(4), 1, t)) *
                     pinf({q_pow(48), q_pow(72)}, q_pow(120), 1, t, -1);
          return prefactor(t) * (a + b.shifted(5));
        });
    add("thm13.proof.s1", "product-form",
        "G(1,q^2) = (q^4;q^4)/(q^3;q^3) (2(-q^4;q^4)^2 E0 + q(-q^2;q^4)^2 O1)", 300, 1, lattice_side(g_sum(0, 2), 1),
        [](std::int64_t t) {
          series pre = pinf({q_pow(4)}, q_pow(4), 1, t) * pinf({q_pow(3)}, q_pow(3), 1, t, -1);
          series a = integer(2) * sq(pinf({q_pow(4, -1)}, q_pow(4), 1, t)) * lattice_sum(sextic_sum(0, false), 1, t);
          series b = sq(pinf({q_pow(2, -1)}, q_pow(4), 1, t)) * lattice_sum(sextic_sum(6, true), 1, t);
          return pre * (a + b.shifted(1));
        });
    add("thm13.proof.s2", "product-form",
        "G(q^2,1) = (q^4;q^4)/(q^3;q^3) ((-q^2;q^4)^2 E6 + 2q^5(-q^4;q^4)^2 O12)", 300, 1,
        lattice_side(g_sum(2, 0), 1), [](std::int64_t t) {
          series pre = pinf({q_pow(4)}, q_pow(4), 1, t) * pinf({q_pow(3)}, q_pow(3), 1, t, -1);
          series a = sq(pinf({q_pow(2, -1)}, q_pow(4), 1, t)) * lattice_sum(sextic_sum(6, false), 1, t);
          series b = integer(2) * sq(pinf({q_pow(4, -1)}, q_pow(4), 1, t)) * lattice_sum(sextic_sum(12, true), 1, t);
          return pre * (a + b.shifted(5));
        });
  }

  // Euler's q-exponential identities
  {
    const std::pair<signed_monomial, std::int64_t> args[] = {
        {q_pow(1), 1},         {q_pow(1, -1), 1}, {q_pow(2), 1}, {q_pow(rational(1, 2)), 2},
        {q_pow(rational(3, 2), -1), 2}, {q_pow(rational(1, 3)), 3}};
    int k = 0;
    for (const auto& [z, den] : args) {
      ++k;
      add("euler.1.z" + std::to_string(k), "euler", "sum z^n/(q;q)_n = 1/(z;q)_inf, z=" + to_string(z), 200, den,
          [z, den](std::int64_t t) { return euler_term_sum(z, 0, den, t); },
          [z, den](std::int64_t t) { return pinf({z}, q_pow(1), den, t, -1); });
    }
    k = 0;
    for (const auto& [z, den] : args) {
      ++k;
      add("euler.2.z" + std::to_string(k), "euler",
          "sum q^(n(n-1)/2) z^n/(q;q)_n = (-z;q)_inf, z=" + to_string(z), 200, den,
          [z, den](std::int64_t t) { return euler_term_sum(z, 1, den, t); },
          [z, den](std::int64_t t) { return pinf({-z}, q_pow(1), den, t); });
    }
  }

  // Jacobi triple product: sum side against the product with the argument in range
  {
    struct arg {
      signed_monomial c;
      rational b;
      std::int64_t den;
    };
    const arg args[] = {{q_pow(1), 3, 1},
                        {q_pow(1, -1), 2, 1},
                        {q_pow(rational(1, 2)), 1, 2},
                        {q_pow(2, -1), 5, 1},
                        {q_pow(rational(4, 3)), 2, 3},
                        {q_pow(4, -1), 4, 1}};
    int k = 0;
    for (const auto& a : args) {
      add("jtp.z" + std::to_string(++k), "jacobi-triple-product",
          "theta(" + to_string(a.c) + "; q^" + rat_label(a.b) + ") sum = product", 300, a.den,
          [a](std::int64_t t) { return theta_sum(a.c, a.b, a.den, t); },
          [a](std::int64_t t) {
            const signed_monomial qb = q_pow(a.b);
            return pinf({qb, a.c, qb * inverse(a.c)}, qb, a.den, t);
          });
    }
  }

  // Quasi-periodicity: theta(c q^(kb); q^b) = (-1)^k q^(-b k(k-1)/2) c^(-k) theta(c; q^b)
  for (std::int64_t k = -2; k <= 3; ++k) {
    const signed_monomial c = q_pow(rational(1, 2), -1);
    const rational b = 2;
    const signed_monomial shifted = c * q_pow(b * k);
    const signed_monomial pre = signed_monomial{(k % 2 == 0) ? 1 : -1, -b * rational(k * (k - 1), 2)} * pow(inverse(c), k);
    add("quasi.k" + std::to_string(k), "quasi-periodicity",
        "theta(-q^(1/2) q^(2k); q^2) with k=" + std::to_string(k), 300, 2,
        [shifted, b](std::int64_t t) { return theta_sum(shifted, b, 2, t); },
        [c, b, pre](std::int64_t t) {
          return mul_monomial(theta_sum(c, b, 2, t - scaled(pre.exponent, 2)), pre);
        });
  }

  // q-Chu-Vandermonde
  for (std::int64_t i = 0; i <= 10; ++i)
    for (std::int64_t j = 0; j <= 10; ++j)
      add("chu." + std::to_string(i) + "." + std::to_string(j), "chu-vandermonde",
          "1/((q;q)_i (q;q)_j) as a sum over k", 150, 1,
          [i, j](std::int64_t t) {
            return poch_finite(q_pow(1), q_pow(1), i, 1, t, -1) * poch_finite(q_pow(1), q_pow(1), j, 1, t, -1);
          },
          [i, j](std::int64_t t) { return chu_sum(i, j, t); });

  // Double-sum conversions and constant-term representations
  add("s12exp.1", "constant-term", "S1 = (-q^3;q^3)_inf sum q^(i^2/2+2ij+2j^2-i/2+2j)/((q^3;q^3)_i(q^6;q^6)_j)", 300,
      1, lattice_side(s1(), 1), times_neg_q3(lattice_side(s1_index_changed(), 1)));
  add("s12exp.2", "constant-term", "S2 = (-q^3;q^3)_inf sum q^(i^2/2+2ij+2j^2+3i/2)/((q^3;q^3)_i(q^6;q^6)_j)", 300, 1,
      lattice_side(s2(), 1), times_neg_q3(lattice_side(s2_index_changed(), 1)));
  add("ct.s1", "constant-term", "S1/(-q^3;q^3)_inf = CT theta(1/z;q)/((-z;q^3)(q^3z^2;q^6))", 300, 1,
      lattice_side(s1(), 1), times_neg_q3(ct_side(f_ct(q_pow(0), q_pow(3)), 1)));
  add("ct.s2", "constant-term", "S2/(-q^3;q^3)_inf = CT theta(1/z;q)/((-q^2z;q^3)(qz^2;q^6))", 300, 1,
      lattice_side(s2(), 1), times_neg_q3(ct_side(f_ct(q_pow(2), q_pow(1)), 1)));
  add("ct.s1.index", "constant-term", "CT theta(1/z;q)/((-z;q^3)(q^3z^2;q^6)) = index-changed S1 sum", 300, 1,
      ct_side(f_ct(q_pow(0), q_pow(3)), 1), lattice_side(s1_index_changed(), 1));
  add("s1alt", "constant-term", "CT (z;q^3)theta(1/z;q)/(z^2;q^3) = sum q^(3i(i-1)/2+(i+2j)(i+2j-1)/2)/(...)", 300, 1,
      ct_side(numerator_ct(q_pow(0), q_pow(0)), 1), lattice_side(constant_term_expansion(), 1));
  add("s1alt.s3", "constant-term", "the expanded constant-term sum is S3", 300, 1,
      lattice_side(constant_term_expansion(), 1), lattice_side(s3(), 1));
  add("s2alt", "constant-term", "CT (q^2z;q^3)theta(1/z;q)/(qz^2;q^3) = S4", 300, 1,
      ct_side(numerator_ct(q_pow(2), q_pow(1)), 1), lattice_side(s4(), 1));

  // Reduction lemma at x = q^a
  for (std::int64_t a = 0; a <= 3; ++a) {
    add("lemma31.x" + std::to_string(a), "reduction-lemma",
        "(q^3;q^3)_inf G(x,q^2/x) in two theta-weighted single sums, x=q^" + std::to_string(a), 240, 1,
        [a](std::int64_t t) { return pinf({q_pow(3)}, q_pow(3), 1, t) * lattice_sum(g_sum(a, 2 - a), 1, t); },
        [a](std::int64_t t) {
          series even = theta_prod(q_pow(a, -1), 4, 1, t) * lattice_sum(sextic_sum(3 * a, false), 1, t);
          series odd = theta_prod(q_pow(a + 2, -1), 4, 1, t) * lattice_sum(sextic_sum(6 + 3 * a, true), 1, t);
          return even + mul_monomial(odd, q_pow(1 + 2 * a));
        });
  }

  // Rogers' mod-20 identities
  {
    auto rhs = [](int which) -> side_builder {
      return [which](std::int64_t t) {
        series base = pinf({q_pow(1)}, q_pow(2), 1, t, -1);
        switch (which) {
        case 1: return base * pinf({q_pow(4), q_pow(16)}, q_pow(20), 1, t, -1);
        case 2: return base * pinf({q_pow(1, -1), q_pow(4)}, q_pow(5, -1), 1, t, -1);
        case 3: return base * pinf({q_pow(2), q_pow(3, -1)}, q_pow(5, -1), 1, t, -1);
        default: return base * pinf({q_pow(8), q_pow(12)}, q_pow(20), 1, t, -1);
        }
      };
    };
    const char* labels[] = {"q^(n^2)/(q;q)_2n", "q^(n(n+1))/(q;q)_2n", "q^(n(n+1))/(q;q)_(2n+1)",
                            "q^(n(n+2))/(q;q)_(2n+1)"};
    for (int k = 1; k <= 4; ++k)
      add("rogers." + std::to_string(k), "rogers-mod20", std::string("sum ") + labels[k - 1], 200, 1,
          lattice_side(rogers_sum(k), 1), rhs(k));
  }

  // Half-integral base representations
  for (int k = 1; k <= 2; ++k) {
    const side_builder s = k == 1 ? lattice_side(s1(), 2) : lattice_side(s2(), 2);
    add("s12new." + std::to_string(k), "half-base",
        std::string("S") + std::to_string(k) + "/(-q^3;q^3)_inf as a (q^(3/2);q^(3/2)) double sum", 100, 2,
        [s](std::int64_t t) { return s(t) * pinf({q_pow(3, -1)}, q_pow(3), 2, t, -1); },
        lattice_side(half_base_sum(k), 2));
    add("s12new." + std::to_string(k) + ".ct", "half-base", "constant-term form of the half-base double sum", 100, 2,
        ct_side(half_base_ct(k), 2), lattice_side(half_base_sum(k), 2));
  }

  // H(x, y) representation and the reflected-sign equality
  add("hrep", "h-representation", "H(q^-1,q^-2) = sum q^(i^2/2+2ij+2j^2+i/2-2j)/((q^3;q^3)_i(q^6;q^6)_j)", 300, 1,
      lattice_side(h_sum(-1, -2), 1), lattice_side(h_reflected(), 1));
  add("hrep.ct", "h-representation", "CT theta(1/z;q)/((-qz;q^3)(q^-1z^2;q^6)) = reflected double sum", 300, 1,
      ct_side(f_ct(q_pow(1), q_pow(-1)), 1), lattice_side(h_reflected(), 1));
  add("hrep.ctnum", "h-representation", "CT (qz;q^3)theta(1/z;q)/(q^-1z^2;q^3) = H(q^-1,q^-2)", 300, 1,
      ct_side(h_ct(-2, -1), 1), lattice_side(h_sum(-1, -2), 1));
  add("hrep.sym", "h-representation", "H(q^-2,q^-1) = H(q^-1,q^-2)", 300, 1, lattice_side(h_sum(-2, -1), 1),
      lattice_side(h_sum(-1, -2), 1));
  add("cor41", "corollary", "linear exponent terms -i/2+2j and i/2-2j give the same double sum", 300, 1,
      lattice_side(s1_index_changed(), 1), lattice_side(h_reflected(), 1));

  return reg;
}

} // namespace detail

inline const std::vector<identity_record>& registry() {
  static const std::vector<identity_record> reg = detail::build_registry();
  return reg;
}

inline const identity_record& find_identity(const std::string& id) {
  for (const auto& r : registry())
    if (r.id == id) return r;
  throw unknown_identity("unknown identity '" + id + "'");
}

// Topic tags, in registry order, each with the ids that carry it.
inline std::vector<std::string> registry_tags() {
  std::vector<std::string> tags;
  for (const auto& r : registry())
    if (std::find(tags.begin(), tags.end(), r.tag) == tags.end()) tags.push_back(r.tag);
  return tags;
}

} // namespace qnahm
