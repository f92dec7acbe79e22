#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qnahm/monomial.hpp"
#include "qnahm/products.hpp"
#include "qnahm/series.hpp"

namespace qnahm {

using rational_matrix = std::vector<std::vector<rational>>;

// constant + sum_k coeffs[k] * n_k; missing coefficients are zero.
struct affine_length {
  std::int64_t constant = 0;
  std::vector<std::int64_t> coeffs;

  std::int64_t at(const std::vector<std::int64_t>& n) const {
    std::int64_t v = constant;
    for (std::size_t k = 0; k < coeffs.size() && k < n.size(); ++k) v += coeffs[k] * n[k];
    return v;
  }

  // Index of the last coordinate this length depends on, or -1.
  int last_coordinate() const {
    for (std::size_t k = coeffs.size(); k-- > 0;)
      if (coeffs[k] != 0) return static_cast<int>(k);
    return -1;
  }
};

// Length along coordinate k only: n_k + constant.
inline affine_length coord_length(std::size_t k, std::int64_t mult = 1, std::int64_t constant = 0) {
  affine_length l;
  l.constant = constant;
  l.coeffs.assign(k + 1, 0);
  l.coeffs[k] = mult;
  return l;
}

// (arg; base)_length
struct factor_spec {
  signed_monomial arg;
  signed_monomial base;
  affine_length length;
};

// scalar * sum over n in the nonnegative orthant of
//   (-1)^(signs . n) q^(n^T quad n / 2 + lin . n + constant) prod(numerators) / prod(denominators)
struct lattice_sum_spec {
  rational_matrix quad;
  std::vector<rational> lin;
  rational constant{0};
  std::vector<int> signs;
  std::vector<factor_spec> denominators;
  std::vector<factor_spec> numerators;
  int scalar = 1;

  std::size_t rank() const { return lin.size(); }
};

struct lattice_stats {
  std::size_t points = 0; // lattice points whose term was accumulated
  std::size_t visited = 0;
};

struct lattice_options {
  // Values above 1 widen every coordinate range to `enumeration_scale` times
  // the computed bound and disable exponent pruning.
  std::int64_t enumeration_scale = 1;
  lattice_stats* stats = nullptr;
};

namespace detail {

inline std::optional<rational_matrix> inverse_matrix(rational_matrix a) {
  const std::size_t n = a.size();
  rational_matrix inv(n, std::vector<rational>(n, rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const rational f = a[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// Sylvester's criterion: every leading principal minor is positive.
inline bool is_positive_definite(const rational_matrix& a) {
  const std::size_t n = a.size();
  rational_matrix m = a;
  for (std::size_t k = 0; k < n; ++k) {
    // after eliminating the first k columns, m[k][k] = minor_{k+1} / minor_k
    if (m[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      const rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return true;
}

// On the nonnegative orthant n^T A n >= n^T A' n when A' drops the positive
// off-diagonal entries of A.
inline rational_matrix orthant_minorant(const rational_matrix& a) {
  rational_matrix m = a;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j && m[i][j] > 0) m[i][j] = 0;
  return m;
}

// Minimum over the trailing coordinates (unconstrained, real) of the bounding
// quadratic, as a quadratic in the leading ones.
struct partial_bound {
  rational_matrix quad;
  std::vector<rational> lin;
  rational constant;

  rational at(const std::vector<std::int64_t>& y) const {
    rational v = constant;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      v += lin[i] * y[i];
      rational row = quad[i][i] * y[i] / 2;
      for (std::size_t j = 0; j < i; ++j) row += quad[i][j] * y[j];
      v += row * y[i];
    }
    return v;
  }
};

inline partial_bound schur_bound(const rational_matrix& a, const std::vector<rational>& b, const rational& c,
                                 std::size_t kept) {
  const std::size_t r = a.size();
  const std::size_t m = r - kept;
  partial_bound out;
  out.quad.assign(kept, std::vector<rational>(kept));
  out.lin.assign(kept, rational(0));
  for (std::size_t i = 0; i < kept; ++i) {
    out.lin[i] = b[i];
    for (std::size_t j = 0; j < kept; ++j) out.quad[i][j] = a[i][j];
  }
  out.constant = c;
  if (m == 0) return out;
  rational_matrix amm(m, std::vector<rational>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) amm[i][j] = a[kept + i][kept + j];
  const auto inv = inverse_matrix(amm);
  if (!inv) throw not_positive_definite("singular trailing block in enumeration bound");
  // w = inv * B_M ; W = inv * A_MP
  std::vector<rational> w(m, rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) w[i] += (*inv)[i][j] * b[kept + j];
  rational_matrix wm(m, std::vector<rational>(kept, rational(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < kept; ++p)
      for (std::size_t j = 0; j < m; ++j) wm[i][p] += (*inv)[i][j] * a[kept + j][p];
  for (std::size_t p = 0; p < kept; ++p) {
    for (std::size_t s = 0; s < kept; ++s)
      for (std::size_t i = 0; i < m; ++i) out.quad[p][s] -= a[p][kept + i] * wm[i][s];
    for (std::size_t i = 0; i < m; ++i) out.lin[p] -= a[p][kept + i] * w[i];
  }
  for (std::size_t i = 0; i < m; ++i) out.constant -= b[kept + i] * w[i] / 2;
  return out;
}

class lattice_evaluator {
public:
  lattice_evaluator(const lattice_sum_spec& spec, std::int64_t den, std::int64_t order, const lattice_options& opts)
      : spec_(spec), den_(den), order_(order), opts_(opts), r_(spec.rank()) {
    validate();
    rational_matrix bounding = spec.quad;
    if (!is_positive_definite(bounding)) {
      bounding = orthant_minorant(spec.quad);
      if (!is_positive_definite(bounding))
        throw not_positive_definite("quadratic form is not positive definite, nor dominated on the orthant by one");
    }
    for (std::size_t k = 0; k < r_; ++k) levels_.push_back(schur_bound(bounding, spec.lin, spec.constant, k + 1));
    const rational global_min = schur_bound(bounding, spec.lin, spec.constant, 0).constant;
    min_scaled_ = floor(global_min * den_);
    working_ = order_ - std::min<std::int64_t>(0, min_scaled_);

    // integer data for exact exponents: D * exponent(n)
    diag_.resize(r_);
    lin_.resize(r_);
    cross_.assign(r_, std::vector<std::int64_t>(r_, 0));
    for (std::size_t i = 0; i < r_; ++i) {
      diag_[i] = scaled(spec.quad[i][i], den_);
      lin_[i] = scaled(spec.quad[i][i] / 2 + spec.lin[i], den_);
      for (std::size_t j = i + 1; j < r_; ++j) cross_[i][j] = scaled(spec.quad[i][j], den_);
    }
    const_ = scaled(spec.constant, den_);

    for (std::size_t f = 0; f < spec.denominators.size(); ++f)
      groups_[spec.denominators[f].length.last_coordinate() + 1].push_back({f, -1});
    for (std::size_t f = 0; f < spec.numerators.size(); ++f)
      groups_[spec.numerators[f].length.last_coordinate() + 1].push_back({f, 1});
  }

  series run() {
    std::vector<std::int64_t> n(r_, 0);
    series inner = sum_level(0, n);
    series total = group_product(0, n) * inner;
    if (spec_.scalar != 1) total = integer(spec_.scalar) * total;
    return total.truncated(order_);
  }

private:
  struct member {
    std::size_t index;
    int power;
  };

  void validate() const {
    if (r_ == 0) throw error("lattice sum needs rank at least 1");
    if (spec_.quad.size() != r_) throw error("quadratic form size does not match rank");
    for (std::size_t i = 0; i < r_; ++i) {
      if (spec_.quad[i].size() != r_) throw error("quadratic form is not square");
      for (std::size_t j = 0; j < r_; ++j)
        if (spec_.quad[i][j] != spec_.quad[j][i]) throw error("quadratic form is not symmetric");
    }
    if (!spec_.signs.empty() && spec_.signs.size() != r_) throw error("sign vector size does not match rank");
    for (const auto* list : {&spec_.denominators, &spec_.numerators})
      for (const auto& f : *list) {
        if (f.base.exponent <= 0) throw non_convergent_product("factor base must have positive exponent");
        if (f.length.coeffs.size() > r_) throw error("factor length refers to a missing coordinate");
      }
  }

  std::int64_t exponent(const std::vector<std::int64_t>& n) const {
    std::int64_t e = const_;
    for (std::size_t i = 0; i < r_; ++i) {
      e += diag_[i] * (n[i] * (n[i] - 1) / 2) + lin_[i] * n[i];
      for (std::size_t j = i + 1; j < r_; ++j) e += cross_[i][j] * n[i] * n[j];
    }
    return e;
  }

  int sign(const std::vector<std::int64_t>& n) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < spec_.signs.size(); ++i) s += spec_.signs[i] * n[i];
    return (s % 2 == 0) ? 1 : -1;
  }

  const series& factor_series(const factor_spec& f, int power, std::int64_t len,
                              std::map<std::int64_t, series>& cache) {
    auto it = cache.find(len);
    if (it != cache.end()) return it->second;
    if (len < 0) throw negative_length("factor length " + std::to_string(len) + " is negative at a visited point");
    return cache.emplace(len, poch_finite(f.arg, f.base, len, den_, working_, power)).first->second;
  }

  // Product of all factors whose length last depends on coordinate level-1.
  series group_product(std::size_t level, const std::vector<std::int64_t>& n) {
    const auto& members = groups_[static_cast<int>(level)];
    std::vector<std::int64_t> key;
    for (const auto& m : members) {
      const auto& f = m.power < 0 ? spec_.denominators[m.index] : spec_.numerators[m.index];
      key.push_back(f.length.at(n));
    }
    auto& memo = products_[level];
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    series p = series::one(den_, working_);
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto& m = members[i];
      const auto& f = m.power < 0 ? spec_.denominators[m.index] : spec_.numerators[m.index];
      auto& cache = m.power < 0 ? denom_cache_[m.index] : numer_cache_[m.index];
      const series& s = factor_series(f, m.power, key[i], cache);
      p = (i == 0) ? s : p * s;
    }
    return memo.emplace(std::move(key), std::move(p)).first->second;
  }

  series sum_level(std::size_t k, std::vector<std::int64_t>& n) {
    const auto& bound = levels_[k];
    const rational top(order_, den_);
    rational slope = bound.lin[k];
    for (std::size_t j = 0; j < k; ++j) slope += bound.quad[k][j] * n[j];
    const rational vertex = -slope / bound.quad[k][k];
    const bool leaf = (k + 1 == r_);
    const std::int64_t scale = opts_.enumeration_scale;

    series_accumulator acc(den_, std::min(min_scaled_, order_), order_);
    std::optional<std::int64_t> stop;
    for (std::int64_t v = 0;; ++v) {
      n[k] = v;
      const rational lower = bound.at(n);
      const bool beyond = lower >= top;
      if (!stop && beyond && rational(v) > vertex) stop = v;
      if (stop && v >= std::max<std::int64_t>(*stop * scale, *stop + (scale > 1 ? 1 : 0))) break;
      if (beyond && scale == 1) continue;
      if (opts_.stats) ++opts_.stats->visited;
      if (leaf) {
        const std::int64_t e = exponent(n);
        if (e >= order_ && scale == 1) continue;
        acc.add(group_product(k + 1, n), e, sign(n));
        if (opts_.stats) ++opts_.stats->points;
      } else {
        series child = sum_level(k + 1, n);
        if (child.is_zero()) continue;
        acc.add(group_product(k + 1, n) * child, 0, 1);
      }
    }
    n[k] = 0;
    return std::move(acc).take();
  }

  const lattice_sum_spec& spec_;
  std::int64_t den_;
  std::int64_t order_;
  lattice_options opts_;
  std::size_t r_;
  std::vector<partial_bound> levels_;
  std::int64_t min_scaled_ = 0;
  std::int64_t working_ = 0;
  std::vector<std::int64_t> diag_, lin_;
  std::vector<std::vector<std::int64_t>> cross_;
  std::int64_t const_ = 0;
  std::map<int, std::vector<member>> groups_;
  std::map<std::size_t, std::map<std::vector<std::int64_t>, series>> products_;
  std::map<std::size_t, std::map<std::int64_t, series>> denom_cache_, numer_cache_;
};

} // namespace detail

// Exact truncated value of a lattice sum below scaled order `order`.
inline series lattice_sum(const lattice_sum_spec& spec, std::int64_t den, std::int64_t order,
                          const lattice_options& opts = {}) {
  detail::lattice_evaluator ev(spec, den, order, opts);
  return ev.run();
}

// Sum of several lattice sums on one lattice.
inline series lattice_sum(const std::vector<lattice_sum_spec>& specs, std::int64_t den, std::int64_t order,
                          const lattice_options& opts = {}) {
  series total = series::zero(den, order);
  for (const auto& s : specs) total += lattice_sum(s, den, order, opts);
  return total;
}

// Nahm sum f_{A,B,C}: denominators (q;q)_{n_i}.
inline lattice_sum_spec nahm_spec(const rational_matrix& a, const std::vector<rational>& b, const rational& c) {
  lattice_sum_spec spec;
  spec.quad = a;
  spec.lin = b;
  spec.constant = c;
  for (std::size_t i = 0; i < b.size(); ++i) spec.denominators.push_back({q_pow(1), q_pow(1), coord_length(i)});
  return spec;
}

inline series nahm_sum(const rational_matrix& a, const std::vector<rational>& b, const rational& c, std::int64_t den,
                       std::int64_t order) {
  return lattice_sum(nahm_spec(a, b, c), den, order);
}

// The sequence (a_k) of the two-sided transformation: either
// a_k = q^(alpha k^2 + beta k) or finitely many signed monomials.
struct sequence_spec {
  enum class kind { quadratic, finite };
  kind type = kind::quadratic;
  rational alpha{1};
  rational beta{0};
  std::vector<std::pair<std::int64_t, signed_monomial>> terms;

  static sequence_spec quadratic(rational alpha, rational beta) {
    return {kind::quadratic, alpha, beta, {}};
  }
  static sequence_spec finite(std::vector<std::pair<std::int64_t, signed_monomial>> terms) {
    return {kind::finite, rational(0), rational(0), std::move(terms)};
  }
};

// Both sides of
//   sum a_{i-j} q^(j(j-1)/2) x^j / ((q;q)_i (q;q)_j)
//     = (-x;q)_inf sum a_{i-j} q^(j(j-1)/2 + ij) x^j / ((q;q)_i (q;q)_j (-x;q)_j).
struct transformation_sides {
  std::vector<lattice_sum_spec> lhs;
  std::vector<lattice_sum_spec> rhs;
  poch_spec rhs_prefactor;
};

inline transformation_sides thm11_pair(const sequence_spec& seq, const signed_monomial& x) {
  if (x.exponent < 0) throw error("x must have nonnegative exponent");
  transformation_sides out;
  out.rhs_prefactor = poch_spec{{-x}, q_pow(1), std::nullopt, 1};
  const int xsign = x.sign < 0 ? 1 : 0;
  const rational ex = x.exponent;

  if (seq.type == sequence_spec::kind::quadratic) {
    if (seq.alpha <= 0) throw non_positive_quadratic("sequence exponent needs a positive quadratic coefficient");
    const rational a = seq.alpha;
    lattice_sum_spec lhs;
    lhs.quad = {{2 * a, -2 * a}, {-2 * a, 2 * a + 1}};
    lhs.lin = {seq.beta, -seq.beta - rational(1, 2) + ex};
    lhs.signs = {0, xsign};
    lhs.denominators = {{q_pow(1), q_pow(1), coord_length(0)}, {q_pow(1), q_pow(1), coord_length(1)}};
    lattice_sum_spec rhs = lhs;
    rhs.quad[0][1] += 1;
    rhs.quad[1][0] += 1;
    rhs.denominators.push_back({-x, q_pow(1), coord_length(1)});
    out.lhs.push_back(std::move(lhs));
    out.rhs.push_back(std::move(rhs));
    return out;
  }

  // One rank-1 sum per supported diagonal i - j = k.
  for (const auto& [k, ak] : seq.terms) {
    lattice_sum_spec lhs;
    lhs.scalar = ak.sign;
    lhs.signs = {xsign};
    if (k >= 0) {
      // run over j with i = j + k
      lhs.quad = {{rational(1)}};
      lhs.lin = {-rational(1, 2) + ex};
      lhs.constant = ak.exponent;
      lhs.denominators = {{q_pow(1), q_pow(1), coord_length(0, 1, k)}, {q_pow(1), q_pow(1), coord_length(0)}};
      lattice_sum_spec rhs = lhs;
      rhs.quad = {{rational(3)}};
      rhs.lin[0] += k;
      rhs.denominators.push_back({-x, q_pow(1), coord_length(0)});
      out.lhs.push_back(std::move(lhs));
      out.rhs.push_back(std::move(rhs));
    } else {
      // run over i with j = i + K
      const std::int64_t big_k = -k;
      if (xsign && big_k % 2 != 0) lhs.scalar = -lhs.scalar;
      lhs.quad = {{rational(1)}};
      lhs.lin = {rational(big_k) - rational(1, 2) + ex};
      lhs.constant = ak.exponent + rational(big_k * (big_k - 1), 2) + ex * big_k;
      lhs.denominators = {{q_pow(1), q_pow(1), coord_length(0)}, {q_pow(1), q_pow(1), coord_length(0, 1, big_k)}};
      lattice_sum_spec rhs = lhs;
      rhs.quad = {{rational(3)}};
      rhs.lin[0] += big_k;
      rhs.denominators.push_back({-x, q_pow(1), coord_length(0, 1, big_k)});
      out.lhs.push_back(std::move(lhs));
      out.rhs.push_back(std::move(rhs));
    }
  }
  return out;
}

} // namespace qnahm
