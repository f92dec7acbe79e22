#pragma once

// Named lattice sums and constant-term expressions shared by the identity
// registry, the tests and the acceptance suite.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qnahm/ct.hpp"
#include "qnahm/lattice.hpp"

namespace qnahm::catalog {

// (base; base)_{n_k}
inline factor_spec qfact(std::size_t k, const signed_monomial& base, std::int64_t mult = 1, std::int64_t add = 0) {
  return {base, base, coord_length(k, mult, add)};
}

// sum over i, j >= 0 of q^(a11 i^2/2 + a12 ij + a22 j^2/2 + b1 i + b2 j) / ((Qi;Qi)_i (Qj;Qj)_j)
inline lattice_sum_spec double_sum(rational a11, rational a12, rational a22, rational b1, rational b2,
                                   signed_monomial base_i, signed_monomial base_j, std::array<int, 2> signs = {0, 0}) {
  lattice_sum_spec s;
  s.quad = {{a11, a12}, {a12, a22}};
  s.lin = {b1, b2};
  s.signs = {signs[0], signs[1]};
  s.denominators = {qfact(0, base_i), qfact(1, base_j)};
  return s;
}

// sum over n >= 0 of q^(a n^2/2 + b n + c) / (Q;Q)_{mult n + add}
inline lattice_sum_spec single_sum(rational a, rational b, signed_monomial base, std::int64_t mult = 1,
                                   std::int64_t add = 0, rational c = 0) {
  lattice_sum_spec s;
  s.quad = {{a}};
  s.lin = {b};
  s.constant = c;
  s.denominators = {qfact(0, base, mult, add)};
  return s;
}

// Example 5 sums over (q^3;q^3)_i (q^3;q^3)_j:
//   S1 = sum q^(i^2/2 - ij + 2j^2 - i/2 + 2j),  S2 = sum q^(i^2/2 - ij + 2j^2 + 3i/2).
inline lattice_sum_spec s1() { return double_sum(1, -1, 4, rational(-1, 2), 2, q_pow(3), q_pow(3)); }
inline lattice_sum_spec s2() { return double_sum(1, -1, 4, rational(3, 2), 0, q_pow(3), q_pow(3)); }

// Example 10 sums: S3 = sum q^(2i^2 + 2ij + 2j^2 - 2i - j),  S4 = sum q^(2i^2 + 2ij + 2j^2).
inline lattice_sum_spec s3() { return double_sum(4, 2, 4, -2, -1, q_pow(3), q_pow(3)); }
inline lattice_sum_spec s4() { return double_sum(4, 2, 4, 0, 0, q_pow(3), q_pow(3)); }

// G(q^a, q^c) = sum q^(i(i-1)/2 - ij + 2j^2 + a i + c j) / ((q^3;q^3)_i (q^3;q^3)_j)
inline lattice_sum_spec g_sum(rational a, rational c) {
  return double_sum(1, -1, 4, rational(-1, 2) + a, c, q_pow(3), q_pow(3));
}

// H(q^a, q^b) = sum q^(2i^2 + 2ij + 2j^2 + a i + b j) / ((q^3;q^3)_i (q^3;q^3)_j)
inline lattice_sum_spec h_sum(rational a, rational b) { return double_sum(4, 2, 4, a, b, q_pow(3), q_pow(3)); }

// sum q^(i^2/2 + 2ij + 2j^2 + b1 i + b2 j) / ((q^3;q^3)_i (q^6;q^6)_j); the
// form is (i+2j)^2/2, singular but positive on the orthant.
inline lattice_sum_spec mixed_base_sum(rational b1, rational b2) {
  return double_sum(1, 2, 4, b1, b2, q_pow(3), q_pow(6));
}

// The two inner sums after the index change for S1 and S2.
inline lattice_sum_spec s1_index_changed() { return mixed_base_sum(rational(-1, 2), 2); }
inline lattice_sum_spec s2_index_changed() { return mixed_base_sum(rational(3, 2), 0); }

// The same inner sum with the sign of the linear part flipped; equal to S3.
inline lattice_sum_spec h_reflected() { return mixed_base_sum(rational(1, 2), -2); }

// sum q^(3i(i-1)/2 + (i+2j)(i+2j-1)/2) / ((q^3;q^3)_i (q^3;q^3)_j), expanded
// term by term: 3i^2/2 - 3i/2 + (i^2 + 4ij + 4j^2)/2 - i/2 - j.
inline lattice_sum_spec constant_term_expansion() {
  const rational a11 = rational(3) + 1; // 2 * (3/2 + 1/2)
  const rational a12 = 2;
  const rational a22 = 4;
  return double_sum(a11, a12, a22, rational(-3, 2) - rational(1, 2), -1, q_pow(3), q_pow(3));
}

// Half-integral base sums: sum (-1)^j q^((i+j)^2/2 + b1 i + b2 j) / ((q^(3/2);q^(3/2))_i (q^3;q^3)_j)
inline lattice_sum_spec half_base_sum(int which) {
  const rational b1 = which == 1 ? rational(-1, 2) : rational(0);
  const rational b2 = which == 1 ? rational(1) : rational(0);
  return double_sum(1, 1, 1, b1, b2, q_pow(rational(3, 2)), q_pow(3), {0, 1});
}

// Rogers' mod-20 sums: q^(n^2), q^(n(n+1)), q^(n(n+1)), q^(n(n+2)) over
// (q;q)_2n, (q;q)_2n, (q;q)_(2n+1), (q;q)_(2n+1).
inline lattice_sum_spec rogers_sum(int which) {
  switch (which) {
  case 1: return single_sum(2, 0, q_pow(1), 2, 0);
  case 2: return single_sum(2, 1, q_pow(1), 2, 0);
  case 3: return single_sum(2, 1, q_pow(1), 2, 1);
  default: return single_sum(2, 2, q_pow(1), 2, 1);
  }
}

// sum q^(6j^2 + (3a + shift) j) / (q^6;q^6)_(2j + odd)
inline lattice_sum_spec sextic_sum(rational linear, bool odd) { return single_sum(12, linear, q_pow(6), 2, odd ? 1 : 0); }

// CT theta(1/z;q) / ((-x z;q^3)_inf (y z^2;q^6)_inf) with x = sx q^ax, y = q^ay.
inline ct_expr f_ct(signed_monomial x, signed_monomial y) {
  return {q_pow(0), 1, {{-x, 1, q_pow(3), false}, {y, 2, q_pow(6), false}}};
}

// CT (c z;q^3)_inf theta(1/z;q) / (d z^2;q^3)_inf
inline ct_expr numerator_ct(signed_monomial c, signed_monomial d) {
  return {q_pow(0), 1, {{c, 1, q_pow(3), true}, {d, 2, q_pow(3), false}}};
}

// H(x, y) = CT (y z q^2;q^3)_inf theta(1/z;q) / (q x z^2;q^3)_inf
inline ct_expr h_ct(rational ax, rational ay) { return numerator_ct(q_pow(ay + 2), q_pow(ax + 1)); }

// CT theta(1/z;q) / ((-s z;q^(3/2))_inf (s z;q^3)_inf), s = q^0 or q^(1/2) scaled as below.
inline ct_expr half_base_ct(int which) {
  const signed_monomial first = which == 1 ? q_pow(0) : q_pow(rational(1, 2));
  const signed_monomial second = which == 1 ? q_pow(rational(3, 2)) : q_pow(rational(1, 2));
  return {q_pow(0), 1, {{-first, 1, q_pow(rational(3, 2)), false}, {second, 1, q_pow(3), false}}};
}

struct named_lattice {
  std::string name;
  lattice_sum_spec spec;
  std::int64_t den;
  rational order;
};

struct named_ct {
  std::string name;
  ct_expr expr;
  std::int64_t den;
  rational order;
};

// Every lattice sum the registry evaluates, at the order the registry uses.
inline std::vector<named_lattice> lattice_sums() {
  std::vector<named_lattice> out = {
      {"S1", s1(), 1, 300},
      {"S2", s2(), 1, 300},
      {"S3", s3(), 1, 300},
      {"S4", s4(), 1, 300},
      {"S1-index-changed", s1_index_changed(), 1, 300},
      {"S2-index-changed", s2_index_changed(), 1, 300},
      {"reflected", h_reflected(), 1, 300},
      {"constant-term-expansion", constant_term_expansion(), 1, 300},
      {"H(q^-1,q^-2)", h_sum(-1, -2), 1, 300},
      {"half-base-1", half_base_sum(1), 2, 100},
      {"half-base-2", half_base_sum(2), 2, 100},
      {"rr-1", single_sum(2, 0, q_pow(1)), 1, 200},
      {"rr-2", single_sum(2, 1, q_pow(1)), 1, 200},
  };
  for (int k = 1; k <= 4; ++k) out.push_back({"rogers-" + std::to_string(k), rogers_sum(k), 1, 200});
  for (int a = 0; a <= 3; ++a) {
    out.push_back({"G(q^" + std::to_string(a) + ",q^" + std::to_string(2 - a) + ")", g_sum(a, 2 - a), 1, 240});
    out.push_back({"sextic-even-" + std::to_string(a), sextic_sum(3 * a, false), 1, 240});
    out.push_back({"sextic-odd-" + std::to_string(a), sextic_sum(6 + 3 * a, true), 1, 240});
  }
  return out;
}

// Every constant-term expression the registry evaluates.
inline std::vector<named_ct> ct_expressions() {
  return {
      {"F(1,q^3)", f_ct(q_pow(0), q_pow(3)), 1, 300},
      {"F(q^2,q)", f_ct(q_pow(2), q_pow(1)), 1, 300},
      {"(z;q^3)/(z^2;q^3)", numerator_ct(q_pow(0), q_pow(0)), 1, 300},
      {"(q^2z;q^3)/(qz^2;q^3)", numerator_ct(q_pow(2), q_pow(1)), 1, 300},
      {"half-base-1", half_base_ct(1), 2, 100},
      {"half-base-2", half_base_ct(2), 2, 100},
      {"1/((-qz;q^3)(q^-1z^2;q^6))", f_ct(q_pow(1), q_pow(-1)), 1, 300},
      {"H(q^-2,q^-1)", h_ct(-2, -1), 1, 300},
  };
}

} // namespace qnahm::catalog
