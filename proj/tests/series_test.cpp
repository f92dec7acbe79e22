#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qnahm/products.hpp"
#include "qnahm/series.hpp"

using namespace qnahm;

namespace {

series poly(std::int64_t den, std::int64_t order, std::initializer_list<std::pair<std::int64_t, int>> terms) {
  series s = series::zero(den, order);
  for (auto [e, c] : terms) s += integer(c) * series::monomial(q_pow(rational(e, den)), den, order);
  return s;
}

// Random series with valuation in [-3, 3], leading coefficient +-1 when unit.
series random_series(std::mt19937_64& rng, std::int64_t den, std::int64_t order, bool unit) {
  const std::int64_t val = static_cast<std::int64_t>(rng() % 7) - 3;
  std::vector<integer> c(static_cast<std::size_t>(order - val));
  for (auto& x : c) x = static_cast<long>(rng() % 11) - 5;
  c[0] = unit ? ((rng() & 1) ? 1 : -1) : integer(static_cast<long>(rng() % 5) + 1);
  return series::from_dense(den, val, order, std::move(c));
}

bool canonical(const series& s) {
  if (s.is_zero()) return s.valuation() == s.order() && s.dense().empty();
  if (s.dense().front() == 0) return false;
  if (s.valuation() + static_cast<std::int64_t>(s.dense().size()) != s.order()) return false;
  bool ok = true;
  s.for_each_term([&](const rational& e, const integer& c) {
    ok = ok && c != 0 && e * s.den() < s.order() && e * s.den() >= s.valuation();
  });
  return ok;
}

} // namespace

TEST(Monomial, ConstantOne) {
  const auto s = series::monomial(q_pow(0), 1, 10);
  EXPECT_EQ(s.valuation(), 0);
  EXPECT_EQ(s.order(), 10);
  EXPECT_EQ(s.coeff(0), 1);
  EXPECT_EQ(s.term_count(), 1u);
}

TEST(Monomial, NegativeCube) {
  const auto s = series::monomial(q_pow(3, -1), 1, 10);
  EXPECT_EQ(s.coeff(3), -1);
  EXPECT_EQ(s.term_count(), 1u);
  EXPECT_EQ(to_string(s), "-q^3 + O(q^10)");
}

TEST(Monomial, HalfIntegerScaled) {
  const auto s = series::monomial(q_pow(rational(3, 2)), 2, 20);
  EXPECT_EQ(s.valuation(), 3);
  EXPECT_EQ(s.coeff_scaled(3), 1);
}

TEST(Monomial, IncompatibleDenominator) {
  EXPECT_THROW(series::monomial(q_pow(rational(1, 2)), 1, 10), incompatible_denominator);
  EXPECT_THROW(series::monomial(q_pow(rational(1, 3)), 2, 10), incompatible_denominator);
}

TEST(Add, Examples) {
  EXPECT_EQ(poly(1, 10, {{0, 1}, {1, -1}}) + poly(1, 10, {{1, 1}}), series::one(1, 10));
  const auto f = poly(1, 10, {{0, 2}, {4, -3}});
  const auto z = f + (-f);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.term_count(), 0u);
  EXPECT_TRUE(canonical(z));

  const auto mixed = poly(1, 10, {{1, 1}}) + poly(2, 20, {{1, 1}});
  EXPECT_EQ(mixed.den(), 2);
  EXPECT_EQ(mixed.coeff(rational(1, 2)), 1);
  EXPECT_EQ(mixed.coeff(1), 1);
  EXPECT_EQ(mixed.term_count(), 2u);
}

TEST(Add, OrderIsMinimum) {
  const auto s = poly(1, 10, {{0, 1}}) - poly(1, 6, {{2, 1}});
  EXPECT_EQ(s.order(), 6);
}

TEST(Mul, Examples) {
  EXPECT_EQ(poly(1, 10, {{0, 1}, {1, -1}}) * poly(1, 10, {{0, 1}, {1, 1}}), poly(1, 10, {{0, 1}, {2, -1}}));
  const auto f = poly(1, 10, {{0, 3}, {2, -1}, {7, 4}});
  EXPECT_EQ(f * series::one(1, 10), f);
}

TEST(Mul, OrderPropagation) {
  const auto f = poly(1, 10, {{2, 1}});
  const auto g = poly(1, 8, {{-1, 1}});
  const auto h = f * g;
  EXPECT_EQ(h.order(), std::min(10 - 1, 8 + 2));
  EXPECT_EQ(h.coeff(1), 1);
}

TEST(Mul, EulerTimesPartitionsIsOne) {
  // both factors come from the oracles, not from the engine's products
  const auto euler = oracle::product(oracle::poch_factors(1, 1, 1, 1, -1, 5), 5);
  std::vector<integer> e(5), p(5);
  for (int k = 0; k < 5; ++k) {
    e[static_cast<std::size_t>(k)] = euler.at(k);
    p[static_cast<std::size_t>(k)] = oracle::partitions(k);
  }
  EXPECT_EQ(e[1], -1);
  EXPECT_EQ(p[4], 5);
  const auto prod = series::from_dense(1, 0, 5, e) * series::from_dense(1, 0, 5, p);
  EXPECT_EQ(prod, series::one(1, 5));
}

TEST(Invert, GeometricSeries) {
  const auto g = poly(1, 5, {{0, 1}, {1, -1}}).inverse();
  EXPECT_EQ(g, poly(1, 5, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}}));
}

TEST(Invert, MonomialFactor) {
  const auto g = poly(1, 8, {{1, 1}, {2, -1}}).inverse();
  EXPECT_EQ(g.valuation(), -1);
  EXPECT_EQ(g.order(), 8 - 2);
  for (int e = -1; e < 6; ++e) EXPECT_EQ(g.coeff(e), 1) << e;
}

TEST(Invert, PartitionNumber) {
  const auto g = poch_inf({q_pow(1)}, q_pow(1), 1, 30).inverse();
  EXPECT_EQ(g.coeff(4), oracle::partitions(4));
  EXPECT_EQ(g.coeff(4), 5);
  for (int n = 0; n < 30; ++n) EXPECT_EQ(g.coeff(n), oracle::partitions(n)) << n;
}

TEST(Invert, NonUnitLeading) {
  EXPECT_THROW(poly(1, 5, {{0, 2}, {1, 1}}).inverse(), non_unit_leading_coefficient);
  EXPECT_THROW(series::zero(1, 5).inverse(), non_unit_leading_coefficient);
}

TEST(Rescale, Examples) {
  const auto f = poly(1, 10, {{0, 1}, {1, -1}});
  EXPECT_EQ(f.rescale(3), poly(1, 30, {{0, 1}, {3, -1}}));
  const auto h = f.rescale(rational(1, 2));
  EXPECT_EQ(h.den(), 2);
  EXPECT_EQ(h.coeff(rational(1, 2)), -1);
  EXPECT_EQ(h.order_exponent(), 5);
  EXPECT_EQ(f.rescale(3).rescale(rational(1, 3)), f);
}

TEST(Rescale, PicksCoarsestLattice) {
  // q^(3/2) - q^3 under q -> q^2 lands on integers
  const auto f = poly(2, 10, {{3, 1}, {6, -1}});
  const auto g = f.rescale(2);
  EXPECT_EQ(g.den(), 1);
  EXPECT_EQ(g.coeff(3), 1);
  EXPECT_EQ(g.coeff(6), -1);
}

TEST(Coeff, Reads) {
  const auto f = poly(1, 10, {{0, 1}, {3, -1}});
  EXPECT_EQ(f.coeff(3), -1);
  EXPECT_EQ(f.coeff(2), 0);
  EXPECT_EQ(f.coeff(-4), 0);
  EXPECT_EQ(f.coeff(rational(1, 2)), 0);
  EXPECT_THROW(f.coeff(10), order_exceeded);
  EXPECT_THROW(f.coeff(11), order_exceeded);
}

TEST(EqToOrder, PassAndMismatch) {
  const auto f = poly(1, 10, {{0, 1}, {3, -1}, {7, 2}});
  EXPECT_TRUE(eq_to_order(f, f, 10).ok());
  const auto g = poly(1, 10, {{0, 1}, {3, -1}, {7, 5}});
  const auto cmp = eq_to_order(f, g, 10);
  ASSERT_FALSE(cmp.ok());
  EXPECT_EQ(cmp.first_mismatch->exponent, 7);
  EXPECT_EQ(cmp.first_mismatch->lhs, 2);
  EXPECT_EQ(cmp.first_mismatch->rhs, 5);
  EXPECT_TRUE(eq_to_order(f, g, 7).ok());
  EXPECT_THROW(eq_to_order(f, g, 11), order_exceeded);
}

TEST(EqToOrder, ReportsLeastExponentAcrossDenominators) {
  const auto f = poly(2, 20, {{1, 1}, {4, 1}});
  const auto g = poly(1, 10, {{2, 1}});
  const auto cmp = eq_to_order(f, g, 5);
  ASSERT_FALSE(cmp.ok());
  EXPECT_EQ(cmp.first_mismatch->exponent, rational(1, 2));
}

TEST(Properties, RingAxioms) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 3);
    const auto f = random_series(rng, den, 20, false);
    const auto g = random_series(rng, den, 24, false);
    const auto h = random_series(rng, 1 + static_cast<std::int64_t>(rng() % 2), 18, false);
    auto check = [](const series& a, const series& b) {
      const rational top = std::min(a.order_exponent(), b.order_exponent());
      EXPECT_TRUE(eq_to_order(a, b, top).ok());
      EXPECT_TRUE(canonical(a));
      EXPECT_TRUE(canonical(b));
    };
    check((f + g) + h, f + (g + h));
    check(f * (g + h), f * g + f * h);
    check(f * g, g * f);
    check((f * g) * h, f * (g * h));
    check(f - f, series::zero(den, f.order()));
  }
}

TEST(Properties, InvertRoundTrip) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = random_series(rng, 1 + static_cast<std::int64_t>(rng() % 4), 30, true);
    const auto prod = f * f.inverse();
    EXPECT_TRUE(canonical(prod));
    EXPECT_TRUE(eq_to_order(prod, series::one(f.den(), prod.order()), prod.order_exponent()).ok());
    EXPECT_EQ(f.inverse().valuation(), -f.valuation());
  }
}

TEST(Properties, RescaleIsRingMorphism) {
  std::mt19937_64 rng(13);
  const rational factors[] = {3, rational(1, 2), rational(2, 3), 6};
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_series(rng, 1, 20, false);
    const auto g = random_series(rng, 2, 30, false);
    const auto r = factors[rng() % 4];
    const auto lhs = (f * g).rescale(r);
    const auto rhs = f.rescale(r) * g.rescale(r);
    EXPECT_TRUE(eq_to_order(lhs, rhs, std::min(lhs.order_exponent(), rhs.order_exponent())).ok());
    EXPECT_TRUE(canonical(lhs));
  }
}

TEST(Properties, CanonicalAfterCancellation) {
  const auto f = poly(1, 10, {{0, 1}, {2, 3}});
  const auto g = poly(1, 10, {{0, 1}, {5, 1}});
  const auto d = f - g;
  EXPECT_TRUE(canonical(d));
  EXPECT_EQ(d.valuation(), 2);
  EXPECT_TRUE(canonical(d.truncated(2)));
  EXPECT_TRUE(d.truncated(2).is_zero());
}

TEST(AtOrder, RaisesWorkingOrder) {
  // q^-3 * (stuff) loses three units of order; at_order compensates
  const auto s = at_order(10, [](std::int64_t t) {
    return series::monomial(q_pow(-3), 1, t) * poch_inf({q_pow(1)}, q_pow(1), 1, t);
  });
  EXPECT_EQ(s.order(), 10);
  EXPECT_EQ(s.coeff(-3), 1);
  EXPECT_EQ(s.coeff(4), 1); // q^-3 * q^7
}
