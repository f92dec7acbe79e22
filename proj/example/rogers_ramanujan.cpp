// Builds both sides of the first Rogers-Ramanujan identity and compares them.
//   sum q^(n^2)/(q;q)_n  vs  1/(q,q^4;q^5)_inf

#include <iostream>

#include "qnahm/lattice.hpp"
#include "qnahm/products.hpp"

int main(int argc, char** argv) {
  using namespace qnahm;
  const std::int64_t order = argc > 1 ? std::stoll(argv[1]) : 40;

  lattice_sum_spec sum;
  sum.quad = {{rational(2)}};
  sum.lin = {rational(0)};
  sum.denominators = {{q_pow(1), q_pow(1), coord_length(0)}};

  const series lhs = lattice_sum(sum, 1, order);
  const series rhs = poch_inf({q_pow(1), q_pow(4)}, q_pow(5), 1, order, -1);

  std::cout << "sum:     " << to_string(lhs.truncated(std::min<std::int64_t>(order, 15))) << '\n';
  std::cout << "product: " << to_string(rhs.truncated(std::min<std::int64_t>(order, 15))) << '\n';
  const auto cmp = eq_to_order(lhs, rhs, order);
  if (cmp.ok()) {
    std::cout << "equal below q^" << order << '\n';
    return 0;
  }
  std::cout << "first difference at q^" << to_string(cmp.first_mismatch->exponent) << '\n';
  return 1;
}
