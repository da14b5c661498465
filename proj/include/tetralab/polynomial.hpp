#pragma once

#include <array>
#include <complex>
#include <map>

#include "tetralab/multi_index.hpp"

namespace tetralab {

using cd = std::complex<double>;
using Triple = std::array<cd, 3>;

/// Which coordinates a polynomial is written in: the Cartan domain side
/// (z = entries of a symmetric 2x2 matrix) or the tetrablock side.
enum class Ambient { Cartan, Tetrablock };

/// Sparse holomorphic polynomial in (z1, z2, z3).
class HoloPolynomial {
 public:
  static constexpr double kPruneThreshold = 1e-15;

  explicit HoloPolynomial(Ambient ambient = Ambient::Cartan) : ambient_(ambient) {}

  static HoloPolynomial constant(cd c, Ambient ambient = Ambient::Cartan);
  static HoloPolynomial monomial(const MultiIndex& m, cd c = 1.0, Ambient ambient = Ambient::Cartan);
  /// z1 z2 - z3^2
  static HoloPolynomial phi3(Ambient ambient = Ambient::Cartan);

  Ambient ambient() const { return ambient_; }
  const std::map<MultiIndex, cd>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  cd coefficient(const MultiIndex& m) const;
  int degree() const;

  HoloPolynomial& add_term(const MultiIndex& m, cd c);
  HoloPolynomial& operator+=(const HoloPolynomial& o);
  HoloPolynomial& operator-=(const HoloPolynomial& o);
  HoloPolynomial& operator*=(cd c);
  friend HoloPolynomial operator+(HoloPolynomial a, const HoloPolynomial& b) { return a += b; }
  friend HoloPolynomial operator-(HoloPolynomial a, const HoloPolynomial& b) { return a -= b; }
  friend HoloPolynomial operator*(HoloPolynomial a, cd c) { return a *= c; }
  friend HoloPolynomial operator*(cd c, HoloPolynomial a) { return a *= c; }
  friend HoloPolynomial operator*(const HoloPolynomial& a, const HoloPolynomial& b);

  HoloPolynomial pow(int e) const;

  /// Drops coefficients with modulus <= kPruneThreshold.
  HoloPolynomial& prune();

  cd evaluate(const Triple& z) const;

  /// f(z1, z2, z1 z2 - z3^2); the result lives on the Cartan side.
  HoloPolynomial compose_phi() const;

  /// f(z1, z2, -z3)
  HoloPolynomial compose_sigma() const;

  /// Coefficient-wise equality within tol.
  bool approx_equal(const HoloPolynomial& o, double tol) const;

 private:
  std::map<MultiIndex, cd> terms_;
  Ambient ambient_;
};

}  // namespace tetralab
