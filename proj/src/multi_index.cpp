#include "tetralab/multi_index.hpp"

namespace tetralab {

std::vector<MultiIndex> monomials_of_degree(int d) {
  std::vector<MultiIndex> out;
  if (d < 0) return out;
  out.reserve(monomial_count(d));
  for (int a3 = d; a3 >= 0; --a3)
    for (int a1 = d - a3; a1 >= 0; --a1) out.push_back({a1, d - a3 - a1, a3});
  return out;
}

std::size_t monomial_position(const MultiIndex& m) {
  const int d = m.degree();
  const int rest = d - m.a3;
  return static_cast<std::size_t>(rest * (rest + 1) / 2 + (rest - m.a1));
}

}  // namespace tetralab
