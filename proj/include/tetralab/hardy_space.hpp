#pragma once

// Graded odd subspaces Hom^-(n) of the sigma-odd Hardy space on the Cartan
// domain, the phi3-ladder orthonormal basis, and the unitary transfer between
// the tetrablock Hardy space and the odd subspace at the polynomial level.

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "tetralab/boundary_measure.hpp"
#include "tetralab/polynomial.hpp"

namespace tetralab {

/// Triples of total degree n with odd a3, ordered by a3 descending then a1
/// descending.
std::vector<MultiIndex> enumerate_hom_minus(int n);

/// (n+1)^2/4 for odd n, n(n+2)/4 for even n.
int dim_hom_minus(int n);

/// G(i, j) = moment(mu_i, mu_j) over enumerate_hom_minus(n). Throws
/// RankDeficient when the smallest eigenvalue is below 1e-12.
Eigen::MatrixXcd gram_matrix(int n, const MeasureContext& ctx);

/// Sum_ij f_i conj(g_j) G(i, j): the L^2(dTheta) pairing of two coefficient
/// vectors over the same monomial list.
cd gram_pairing(const Eigen::MatrixXcd& gram, const Eigen::VectorXcd& f, const Eigen::VectorXcd& g);

struct MeasureInfo {
  QuadratureSpec spec;
  double C = 0.0;
};

/// One degree of the ladder basis. Column i of `vectors` holds the
/// coefficients of e_i^n over `monomials`; the first `ladder_from_prev`
/// columns are phi3 times the columns of degree n - 2.
struct DegreeBlock {
  int n = 0;
  std::vector<MultiIndex> monomials;
  Eigen::MatrixXcd vectors;
  int ladder_from_prev = 0;
};

class GradedBasis {
 public:
  GradedBasis() = default;
  GradedBasis(std::vector<DegreeBlock> blocks, MeasureInfo measure, std::shared_ptr<const MeasureContext> ctx);

  int max_degree() const { return static_cast<int>(blocks_.size()); }
  const DegreeBlock& block(int n) const;
  int dim(int n) const { return static_cast<int>(block(n).vectors.cols()); }
  const MeasureInfo& measure() const { return measure_; }
  /// Short identifier recorded in operator windows and reports.
  const std::string& id() const { return id_; }

  HoloPolynomial vector(int n, int i) const;

  /// Row/column offset of degree n inside a window starting at degree 1.
  int offset(int n) const;
  /// Sum of d_k^- for k = 1..n
  int total_dim(int n) const { return offset(n + 1); }

  const MeasureContext& context() const;
  std::shared_ptr<const MeasureContext> context_ptr() const { return ctx_; }
  void attach_context(std::shared_ptr<const MeasureContext> ctx) { ctx_ = std::move(ctx); }

 private:
  std::vector<DegreeBlock> blocks_;
  MeasureInfo measure_;
  std::shared_ptr<const MeasureContext> ctx_;
  std::string id_;
};

/// phi3-ladder orthonormal basis of Hom^-(1) ... Hom^-(N).
GradedBasis build_ladder_basis(int N, std::shared_ptr<const MeasureContext> ctx);

/// max |Gram(E_n) - I| for one degree of the basis.
double orthonormality_defect(const GradedBasis& basis, int n);

/// True iff e_i^n == phi3 * e_i^{n-2} coefficient-for-coefficient (no
/// tolerance) for every ladder-linked vector of degree n.
bool ladder_links_exact(const GradedBasis& basis, int n);

/// C^{-1/2} (-2 z3) (f o phi): tetrablock polynomial to odd Cartan polynomial.
HoloPolynomial psi_forward(const HoloPolynomial& f, const MeasureContext& ctx);

/// Inverse of psi_forward on sigma-odd polynomials. Throws ParityViolation if
/// some monomial has even z3-exponent.
HoloPolynomial psi_inverse(const HoloPolynomial& g, const MeasureContext& ctx);

/// Every monomial has odd z3-exponent.
bool parity_check(const HoloPolynomial& f);

/// Integral of f conj(g) dTheta_E for tetrablock polynomials.
cd inner_product_E(const HoloPolynomial& f, const HoloPolynomial& g, const MeasureContext& ctx);

}  // namespace tetralab
