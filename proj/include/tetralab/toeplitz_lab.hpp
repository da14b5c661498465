#pragma once

// Finite windows of Toeplitz and coordinate-multiplication operators on the
// sigma-odd Hardy space, written in the phi3-ladder basis. Every entry is a
// quadratic form <P e_j, Q e_i> of explicitly multiplied polynomials, so
// windows carry no truncation error.

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "tetralab/hardy_space.hpp"
#include "tetralab/symbol.hpp"

namespace tetralab {

/// Inclusive range of homogeneous degrees.
struct DegreeRange {
  int lo = 1;
  int hi = 0;
  bool contains(int n) const { return lo <= n && n <= hi; }
  bool operator==(const DegreeRange&) const = default;
};

/// Matrix of <T e_j, e_i> with e_j running over the column degrees and e_i
/// over the row degrees, both in ladder-basis order.
struct OperatorWindow {
  Eigen::MatrixXcd matrix;
  DegreeRange rows;
  DegreeRange cols;
  std::string basis_id;
  std::vector<int> row_offsets;  // row_offsets[n - rows.lo] is where degree n starts
  std::vector<int> col_offsets;

  int row_index(int n, int i) const { return row_offsets[static_cast<std::size_t>(n - rows.lo)] + i; }
  int col_index(int n, int j) const { return col_offsets[static_cast<std::size_t>(n - cols.lo)] + j; }
  /// Copy restricted to smaller degree ranges.
  OperatorWindow restrict_to(DegreeRange r, DegreeRange c) const;
};

/// Zero window with offsets filled in from the basis. Throws
/// DegreeExceedsSpec if a range leaves 1..basis.max_degree().
OperatorWindow empty_window(const GradedBasis& basis, DegreeRange rows, DegreeRange cols);

/// Boundary function sum_t P_t conj(Q_t) with holomorphic P_t, Q_t on the
/// Cartan side.
struct BoundaryTerm {
  HoloPolynomial P;
  HoloPolynomial Q;
};

struct BoundaryFunction {
  std::vector<BoundaryTerm> terms;

  /// Expanded as sum c z^alpha conj(z^beta).
  std::map<std::pair<MultiIndex, MultiIndex>, cd> expand() const;
  cd evaluate(const Triple& z) const;
};

/// z2 -> phi2, conj(z2) -> conj(phi2), z3^k -> phi3^k (k >= 0) or
/// conj(phi3)^{-k} (k < 0).
BoundaryFunction symbol_pullback(const SymbolExpr& s);

/// Window of the compression of multiplication by f. Throws DegreeExceedsSpec
/// if the basis or the quadrature cannot hold it.
OperatorWindow multiplication_window(const BoundaryFunction& f, const GradedBasis& basis, DegreeRange rows,
                                     DegreeRange cols);

/// Smallest quadrature max_degree for which every entry of the window of f on
/// degrees <= window_degree is integrated exactly.
int required_quadrature_degree(const BoundaryFunction& f, int window_degree);
int required_quadrature_degree(const SymbolExpr& s, int window_degree);

OperatorWindow toeplitz_window(const SymbolExpr& s, const GradedBasis& basis, int N);
OperatorWindow toeplitz_window(const SymbolExpr& s, const GradedBasis& basis, DegreeRange rows, DegreeRange cols);

/// Windows of multiplication by phi1 = z1, phi2 = z2 and phi3 from degrees
/// 1..N into degrees 1..N+2, which hold the products exactly.
struct CoordinateWindows {
  OperatorWindow phi1;
  OperatorWindow phi2;
  OperatorWindow phi3;
};
CoordinateWindows coordinate_windows(const GradedBasis& basis, int N);

struct RelationReport {
  int N = 0;
  double tol = 0.0;
  double residual1 = 0.0;
  double residual2 = 0.0;
  double residual3 = 0.0;
  bool pass = false;
};

/// Entrywise residuals of M1 = M2^* M3, M2 = M1^* M3 and M3^* M3 = I over
/// degrees <= N, each side evaluated as an exact quadratic form.
RelationReport check_tuple_relations(const GradedBasis& basis, int N, double tol);

struct BhResidual {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double max() const { return std::max({r1, r2, r3}); }
};

/// Residuals of A M1 = M2^* A M3, A M2 = M1^* A M3 and M3^* A M3 = A over
/// test vectors of degree <= N. A must cover degrees 1..N+2 in rows and
/// columns (WindowTooSmall otherwise).
BhResidual brown_halmos_residual(const OperatorWindow& A, const GradedBasis& basis, int N);
/// Same with precomputed coordinate_windows(basis, N).
BhResidual brown_halmos_residual(const OperatorWindow& A, const CoordinateWindows& coords, int N);

/// max |<u e_i^n, e_j^m> - <u e_i^{n+2r}, e_j^{m+2r}>| over ladder-linked
/// indices with n + 2r, m + 2r <= N.
double ladder_shift_check(const SymbolExpr& s, const GradedBasis& basis, int N, int r);
/// Same on a precomputed window covering degrees 1..N.
double ladder_shift_check(const OperatorWindow& W, const GradedBasis& basis, int N, int r);

/// profile[r] = max |<u e_i^{n+2r}, e_j^{m+2r}>| over the seeds n, m <= N - 2 r_max
/// and all i < d_n, j < d_m; r = 0..r_max.
std::vector<double> compactness_probe(const SymbolExpr& s, const GradedBasis& basis, int N, int r_max);
std::vector<double> compactness_probe(const OperatorWindow& W, const GradedBasis& basis, int N, int r_max);

/// Dictionary used by symbol_recovery: z2^a conj(z2)^b z3^k with
/// a + b <= dict_degree, |k| <= dict_degree, and |a - b + 2k| <= N - 1 (larger
/// shifts have identically zero windows on degrees 1..N).
std::vector<SymbolTerm> recovery_dictionary(int N, int dict_degree);

struct RecoveryResult {
  SymbolExpr symbol;                     // coefficients above 1e-9 in modulus
  std::vector<SymbolTerm> coefficients;  // raw least-squares solution
  double residual = 0.0;                 // ||A - fit||_F / ||A||_F on degrees 1..N (0 if A = 0)
};

/// Least-squares fit of A's degree 1..N block by the Toeplitz windows of the
/// recovery dictionary. A must cover degrees 1..N+2. Throws
/// SingularDictionary if the dictionary windows are numerically dependent.
RecoveryResult symbol_recovery(const OperatorWindow& A, const GradedBasis& basis, int N, int dict_degree);

}  // namespace tetralab
