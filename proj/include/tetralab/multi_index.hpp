#pragma once

#include <compare>
#include <cstddef>
#include <vector>

namespace tetralab {

/// Exponent triple of z1^a1 z2^a2 z3^a3.
struct MultiIndex {
  int a1 = 0;
  int a2 = 0;
  int a3 = 0;

  constexpr int degree() const { return a1 + a2 + a3; }
  constexpr MultiIndex swapped() const { return {a2, a1, a3}; }
  constexpr MultiIndex operator+(const MultiIndex& o) const { return {a1 + o.a1, a2 + o.a2, a3 + o.a3}; }

  auto operator<=>(const MultiIndex&) const = default;
};

/// Torus weight (2 a1 + a3, 2 a2 + a3). Moments between indices of different
/// weight vanish because W -> D W D is a symmetry for diagonal unitary D.
struct Weight {
  int first;
  int second;
  auto operator<=>(const Weight&) const = default;
};

constexpr Weight weight(const MultiIndex& m) { return {2 * m.a1 + m.a3, 2 * m.a2 + m.a3}; }

/// All exponent triples of total degree d in canonical order: a3 descending,
/// then a1 descending.
std::vector<MultiIndex> monomials_of_degree(int d);

/// Position of m inside monomials_of_degree(m.degree()).
std::size_t monomial_position(const MultiIndex& m);

/// (d+1)(d+2)/2
constexpr std::size_t monomial_count(int d) { return static_cast<std::size_t>((d + 1) * (d + 2) / 2); }

}  // namespace tetralab
