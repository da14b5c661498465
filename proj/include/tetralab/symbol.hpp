#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace tetralab {

using cd = std::complex<double>;

/// coeff * z2^a * conj(z2)^b * z3^k on the tetrablock's distinguished
/// boundary, where |z3| = 1 so negative k stands for conj(z3)^{-k}.
struct SymbolTerm {
  cd coeff;
  int a = 0;
  int b = 0;
  int k = 0;

  /// Degree shift a - b + 2k of the Toeplitz operator in the Cartan grading.
  int degree_shift() const { return a - b + 2 * k; }
};

/// Trigonometric-polynomial symbol in the canonical dictionary
/// {z2^a conj(z2)^b z3^k}. z1 = conj(z2) z3 on the boundary, so every
/// polynomial in (z, conj z) has a unique representation here.
class SymbolExpr {
 public:
  SymbolExpr() = default;
  explicit SymbolExpr(std::vector<SymbolTerm> terms);

  static SymbolExpr term(cd coeff, int a, int b, int k);

  const std::vector<SymbolTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Pointwise complex conjugate.
  SymbolExpr conj() const;
  SymbolExpr operator+(const SymbolExpr& o) const;
  SymbolExpr operator*(const SymbolExpr& o) const;
  SymbolExpr operator*(cd c) const;
  cd coefficient(int a, int b, int k) const;

  /// Value at a boundary point (z1 is implied by z2, z3).
  cd evaluate(cd z2, cd z3) const;

  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<SymbolTerm> terms_;
};

/// Parses the symbol mini-language:
///
///   expr   := term {("+"|"-") term}
///   term   := [coeff "*"] factor {"*" factor}
///   factor := var ["^" int]
///   var    := "z1" | "z2" | "z3" | "~z1" | "~z2" | "~z3"
///   coeff  := float | "(" float ("+"|"-") float "i" ")"
///
/// "~" is complex conjugation. z1 -> ~z2*z3, ~z1 -> z2*~z3, ~z3 -> z3^-1.
/// A term may also be a bare coefficient (a constant). Errors carry the
/// 0-based character position.
SymbolExpr parse_symbol(std::string_view text);

/// Terms z2^a conj(z2)^b z3^k with a + b <= max_ab and |k| <= max_k, in
/// canonical (a, b, k) order, coefficient 1.
std::vector<SymbolTerm> symbol_dictionary(int max_ab, int max_k);

}  // namespace tetralab
