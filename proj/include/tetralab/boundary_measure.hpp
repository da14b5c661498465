#pragma once

// The Shilov boundary of the 3-dimensional type-II Cartan domain (symmetric
// unitary 2x2 matrices W), its invariant probability measure, and the proper
// map phi onto the tetrablock together with the pushed-forward measure on the
// tetrablock's distinguished boundary.
//
// The invariant measure is realised as the law of U U^T for Haar U. Moments
// are integrated on a tensor grid over the Haar coordinates of U:
//
//   U = e^{i g} [[ a, b], [-conj(b), conj(a)]],
//   a = e^{i psi} sqrt(t),  b = e^{i chi} sqrt(1 - t),
//
// with g, psi, chi uniform and t uniform on [0, 1]. The global phase g
// contributes e^{2 i g (|alpha| - |beta|)} and is integrated analytically.

#include <Eigen/Dense>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "tetralab/multi_index.hpp"
#include "tetralab/polynomial.hpp"

namespace tetralab {

/// A symmetric unitary matrix [[w11, w12], [w12, w22]], identified with the
/// point (z1, z2, z3) = (w11, w22, w12).
struct BoundaryPointR {
  cd w11;
  cd w22;
  cd w12;

  Triple coords() const { return {w11, w22, w12}; }
  Eigen::Matrix2cd matrix() const;
  /// max |(W^* W - I)_{ij}|
  double unitarity_defect() const;
  cd det() const { return w11 * w22 - w12 * w12; }
};

struct QuadratureSpec {
  int max_degree = 0;  // largest |alpha| + |beta| integrated exactly
  int nodes_psi = 1;
  int nodes_chi = 1;
  int nodes_t = 1;

  /// 2 d + 1 equispaced nodes per periodic angle, d + 2 Gauss-Legendre nodes in t.
  static QuadratureSpec minimal(int max_degree);
  /// Same degree, node counts multiplied by factor.
  QuadratureSpec refined(int factor) const;
  /// Throws Validation if node counts fall below minimal(max_degree).
  void validate() const;
  std::size_t node_count() const {
    return static_cast<std::size_t>(nodes_psi) * nodes_chi * nodes_t;
  }
  bool operator==(const QuadratureSpec&) const = default;
};

/// Canonical moment-cache key: the ordered exponent pair (alpha, beta).
struct MomentKey {
  MultiIndex alpha;
  MultiIndex beta;
  auto operator<=>(const MomentKey&) const = default;
};

/// Picks the representative among (alpha, beta), (beta, alpha) and their
/// a1 <-> a2 relabelings. `conjugate` is set when the stored value must be
/// conjugated to answer the original request.
MomentKey canonical_key(const MultiIndex& alpha, const MultiIndex& beta, bool& conjugate);

/// Quadrature spec + moment cache + normalization constant.
class MeasureContext {
 public:
  explicit MeasureContext(QuadratureSpec spec);
  ~MeasureContext();
  MeasureContext(const MeasureContext&) = delete;
  MeasureContext& operator=(const MeasureContext&) = delete;

  const QuadratureSpec& spec() const { return spec_; }

  /// Integral of z^alpha conj(z^beta) dTheta.
  cd moment(const MultiIndex& alpha, const MultiIndex& beta) const;

  /// Computes the missing cache entries for all listed pairs in parallel.
  void prefetch(const std::vector<MomentKey>& pairs) const;

  /// Integral of |J_phi|^2 dTheta = 4 * moment((0,0,1),(0,0,1)).
  double normalization_C() const;

  /// Full moment matrix G(i, j) = moment(mu_i, mu_j) over
  /// monomials_of_degree(d). Pairs of different torus weight are set to 0.
  const Eigen::MatrixXcd& degree_gram(int d) const;

  /// Integral of f conj(g) dTheta for Cartan-side polynomials.
  cd inner_product(const HoloPolynomial& f, const HoloPolynomial& g) const;

  /// Number of moments obtained by grid summation (cache misses).
  std::uint64_t quadrature_evaluations() const { return quadrature_evaluations_.load(); }

  std::map<MomentKey, cd> cache_snapshot() const;
  /// Inserts a value for a canonical key (used when loading a cache file).
  void insert_cached(const MomentKey& key, cd value);

 private:
  struct Grid;
  void require_degree(int combined, const char* what) const;
  cd integrate(const MomentKey& key) const;
  const Grid& grid() const;

  QuadratureSpec spec_;
  mutable std::shared_mutex mutex_;
  mutable std::map<MomentKey, cd> cache_;
  mutable std::map<int, std::unique_ptr<const Eigen::MatrixXcd>> grams_;
  mutable std::mutex gram_mutex_;
  mutable std::once_flag grid_once_;
  mutable std::unique_ptr<Grid> grid_;
  mutable std::atomic<std::uint64_t> quadrature_evaluations_{0};
};

cd moment(const MultiIndex& alpha, const MultiIndex& beta, const MeasureContext& ctx);
double normalization_C(const MeasureContext& ctx);

/// (1/C) * integral of phi^alpha conj(phi^beta) |J_phi|^2 dTheta.
cd moment_E(const MultiIndex& alpha, const MultiIndex& beta, const MeasureContext& ctx);

/// Haar unitary: QR of a complex Gaussian matrix with R's diagonal made
/// positive real.
Eigen::Matrix2cd haar_unitary_sample(std::mt19937_64& rng);

/// W = U U^T for count independent Haar U; deterministic in seed.
std::vector<BoundaryPointR> sample_boundary_R(int count, std::uint64_t seed);

/// (z1, z2, z1 z2 - z3^2)
Triple map_phi(const Triple& z);
/// -2 z3
cd jacobian_phi(const Triple& z);
/// (z1, z2, -z3)
Triple involution_sigma(const Triple& z);

/// |z1 - conj(z2) z3| <= tol, ||z3| - 1| <= tol, |z2| <= 1 + tol.
bool shilov_E_membership(const Triple& z, double tol);

/// Mean and standard error of a complex Monte-Carlo average. The standard
/// error uses the complex variance E|f - Ef|^2.
struct McEstimate {
  cd mean;
  double standard_error;
  std::size_t samples;
};

class McAccumulator {
 public:
  McAccumulator() = default;
  /// From precomputed sums of n values v: sum v and sum |v|^2.
  McAccumulator(std::size_t n, cd sum, double sum_sq) : n_(n), sum_(sum), sum_sq_(sum_sq) {}
  void add(cd v) {
    ++n_;
    sum_ += v;
    sum_sq_ += std::norm(v);
  }
  void merge(const McAccumulator& o) {
    n_ += o.n_;
    sum_ += o.sum_;
    sum_sq_ += o.sum_sq_;
  }
  McEstimate estimate() const;

 private:
  std::size_t n_ = 0;
  cd sum_ = 0.0;
  double sum_sq_ = 0.0;
};

/// z^alpha conj(z^beta) at a boundary point.
cd monomial_pair_value(const BoundaryPointR& w, const MultiIndex& alpha, const MultiIndex& beta);

struct MomentCheck {
  MultiIndex alpha;
  MultiIndex beta;
  cd quadrature;
  McEstimate mc;
  /// |quadrature - mc.mean| in units of the standard error (0/0 counts as 0;
  /// a nonzero gap with zero standard error is infinite).
  double deviation_in_se() const;
};

/// Quadrature against sample averages for every pair with
/// |alpha| + |beta| <= max_combined. Samples are reduced in fixed chunks, so
/// the result does not depend on the thread count.
std::vector<MomentCheck> compare_with_samples(const MeasureContext& ctx, int max_combined,
                                              const std::vector<BoundaryPointR>& samples);

}  // namespace tetralab
