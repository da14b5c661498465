#include "tetralab/hardy_space.hpp"

#include <cmath>
#include <sstream>

#include "tetralab/error.hpp"

namespace tetralab {

std::vector<MultiIndex> enumerate_hom_minus(int n) {
  std::vector<MultiIndex> out;
  for (int a3 = (n % 2 == 1) ? n : n - 1; a3 >= 1; a3 -= 2)
    for (int a1 = n - a3; a1 >= 0; --a1) out.push_back({a1, n - a3 - a1, a3});
  return out;
}

int dim_hom_minus(int n) {
  if (n < 0) throw Error(ErrorCode::Validation, "dim_hom_minus: n must be >= 0");
  return (n % 2 == 1) ? (n + 1) * (n + 1) / 4 : n * (n + 2) / 4;
}

cd gram_pairing(const Eigen::MatrixXcd& gram, const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
  return g.dot(gram.transpose() * f);
}

Eigen::MatrixXcd gram_matrix(int n, const MeasureContext& ctx) {
  const auto mons = enumerate_hom_minus(n);
  const Eigen::MatrixXcd& full = ctx.degree_gram(n);
  const auto m = static_cast<Eigen::Index>(mons.size());
  Eigen::MatrixXcd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      g(i, j) = full(monomial_position(mons[i]), monomial_position(mons[j]));
  if (m > 0) {
    const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(g, Eigen::EigenvaluesOnly).eigenvalues()(0);
    if (lo < 1e-12) {
      std::ostringstream os;
      os << "gram_matrix: degree " << n << " minimum eigenvalue " << lo << " below 1e-12";
      throw Error(ErrorCode::RankDeficient, os.str());
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

GradedBasis::GradedBasis(std::vector<DegreeBlock> blocks, MeasureInfo measure,
                         std::shared_ptr<const MeasureContext> ctx)
    : blocks_(std::move(blocks)), measure_(measure), ctx_(std::move(ctx)) {
  std::ostringstream os;
  os << "ladder:N=" << blocks_.size() << ":q=" << measure_.spec.max_degree << "/" << measure_.spec.nodes_psi << "x"
     << measure_.spec.nodes_chi << "x" << measure_.spec.nodes_t;
  id_ = os.str();
}

const DegreeBlock& GradedBasis::block(int n) const {
  if (n < 1 || n > max_degree())
    throw Error(ErrorCode::DegreeExceedsSpec,
                "basis has degrees 1.." + std::to_string(max_degree()) + ", degree " + std::to_string(n) + " requested");
  return blocks_[static_cast<std::size_t>(n - 1)];
}

HoloPolynomial GradedBasis::vector(int n, int i) const {
  const DegreeBlock& b = block(n);
  HoloPolynomial p;
  for (std::size_t k = 0; k < b.monomials.size(); ++k) p.add_term(b.monomials[k], b.vectors(k, i));
  return p;
}

int GradedBasis::offset(int n) const {
  int off = 0;
  for (int k = 1; k < n; ++k) off += dim(k);
  return off;
}

const MeasureContext& GradedBasis::context() const {
  if (!ctx_) throw Error(ErrorCode::Validation, "basis has no measure context attached");
  return *ctx_;
}

namespace {

// Coefficients of phi3 * v, where v lives on enumerate_hom_minus(n - 2),
// expressed over enumerate_hom_minus(n). Multiplication by z1 z2 - z3^2 only
// moves and negates coefficients, so the result is exact.
Eigen::VectorXcd lift_by_phi3(const std::vector<MultiIndex>& from, const Eigen::VectorXcd& v, int n) {
  const auto to = enumerate_hom_minus(n);
  std::map<MultiIndex, Eigen::Index> pos;
  for (std::size_t k = 0; k < to.size(); ++k) pos[to[k]] = static_cast<Eigen::Index>(k);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(to.size()));
  for (std::size_t k = 0; k < from.size(); ++k) {
    const MultiIndex& m = from[k];
    out(pos.at({m.a1 + 1, m.a2 + 1, m.a3})) += v(static_cast<Eigen::Index>(k));
    out(pos.at({m.a1, m.a2, m.a3 + 2})) -= v(static_cast<Eigen::Index>(k));
  }
  return out;
}

}  // namespace

GradedBasis build_ladder_basis(int N, std::shared_ptr<const MeasureContext> ctx) {
  if (N < 1) throw Error(ErrorCode::Validation, "build_ladder_basis: N must be >= 1");
  if (2 * N > ctx->spec().max_degree)
    throw Error(ErrorCode::DegreeExceedsSpec, "build_ladder_basis: N=" + std::to_string(N) +
                                                  " requires max_degree >= " + std::to_string(2 * N) + ", have " +
                                                  std::to_string(ctx->spec().max_degree));
  constexpr double kDependent = 1e-8;  // relative residual of a candidate already in the span
  constexpr double kBreakdown = 1e-12;

  std::vector<DegreeBlock> blocks;
  for (int n = 1; n <= N; ++n) {
    DegreeBlock blk;
    blk.n = n;
    blk.monomials = enumerate_hom_minus(n);
    const auto m = static_cast<Eigen::Index>(blk.monomials.size());
    const int target = dim_hom_minus(n);
    const Eigen::MatrixXcd g = gram_matrix(n, *ctx);
    const Eigen::MatrixXcd gt = g.transpose();
    auto ip = [&](const Eigen::VectorXcd& f, const Eigen::VectorXcd& h) { return h.dot(gt * f); };

    std::vector<Eigen::VectorXcd> accepted;
    if (n >= 3) {
      const DegreeBlock& prev = blocks[static_cast<std::size_t>(n - 3)];
      for (Eigen::Index i = 0; i < prev.vectors.cols(); ++i)
        accepted.push_back(lift_by_phi3(prev.monomials, prev.vectors.col(i), n));
      blk.ladder_from_prev = static_cast<int>(prev.vectors.cols());
    }
    for (Eigen::Index k = 0; k < m && static_cast<int>(accepted.size()) < target; ++k) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Unit(m, k);
      const double start = std::sqrt(ip(v, v).real());
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : accepted) v -= ip(v, q) * q;
      const double norm = std::sqrt(std::max(ip(v, v).real(), 0.0));
      if (norm < kDependent * start) continue;
      if (norm < kBreakdown)
        throw Error(ErrorCode::GramSchmidtBreakdown,
                    "build_ladder_basis: candidate norm " + std::to_string(norm) + " at degree " + std::to_string(n));
      accepted.push_back(v / norm);
    }
    if (static_cast<int>(accepted.size()) != target)
      throw Error(ErrorCode::GramSchmidtBreakdown, "build_ladder_basis: degree " + std::to_string(n) + " produced " +
                                                       std::to_string(accepted.size()) + " vectors, expected " +
                                                       std::to_string(target));
    blk.vectors.resize(m, target);
    for (int i = 0; i < target; ++i) blk.vectors.col(i) = accepted[static_cast<std::size_t>(i)];
    blocks.push_back(std::move(blk));
  }
  MeasureInfo info{ctx->spec(), ctx->normalization_C()};
  return GradedBasis(std::move(blocks), info, std::move(ctx));
}

double orthonormality_defect(const GradedBasis& basis, int n) {
  const DegreeBlock& b = basis.block(n);
  const Eigen::MatrixXcd g = gram_matrix(n, basis.context());
  // entry (i, j) is <e_j, e_i>
  const Eigen::MatrixXcd e = b.vectors.adjoint() * g.transpose() * b.vectors;
  return (e - Eigen::MatrixXcd::Identity(e.rows(), e.cols())).cwiseAbs().maxCoeff();
}

bool ladder_links_exact(const GradedBasis& basis, int n) {
  if (n < 3) return basis.block(n).ladder_from_prev == 0;
  const DegreeBlock& b = basis.block(n);
  const DegreeBlock& prev = basis.block(n - 2);
  if (b.ladder_from_prev != prev.vectors.cols()) return false;
  for (int i = 0; i < b.ladder_from_prev; ++i) {
    const HoloPolynomial expect = HoloPolynomial::phi3() * basis.vector(n - 2, i);
    const HoloPolynomial got = basis.vector(n, i);
    if (!got.approx_equal(expect, 0.0)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Psi

HoloPolynomial psi_forward(const HoloPolynomial& f, const MeasureContext& ctx) {
  const double scale = -2.0 / std::sqrt(ctx.normalization_C());
  HoloPolynomial out = f.compose_phi() * HoloPolynomial::monomial({0, 0, 1}) * cd(scale);
  return out.prune();
}

bool parity_check(const HoloPolynomial& f) {
  for (const auto& [m, c] : f.terms())
    if (m.a3 % 2 == 0) return false;
  return true;
}

HoloPolynomial psi_inverse(const HoloPolynomial& g, const MeasureContext& ctx) {
  if (!parity_check(g))
    throw Error(ErrorCode::ParityViolation, "psi_inverse: input has a monomial with even z3-exponent");
  // g = z3 h(z1, z2, z3^2); on the tetrablock side z3^2 = u1 u2 - u3.
  const HoloPolynomial u1u2 = HoloPolynomial::monomial({1, 1, 0}, 1.0, Ambient::Tetrablock);
  const HoloPolynomial u3 = HoloPolynomial::monomial({0, 0, 1}, 1.0, Ambient::Tetrablock);
  const HoloPolynomial square = u1u2 - u3;
  HoloPolynomial out(Ambient::Tetrablock);
  for (const auto& [m, c] : g.terms())
    out += HoloPolynomial::monomial({m.a1, m.a2, 0}, c, Ambient::Tetrablock) * square.pow((m.a3 - 1) / 2);
  out *= cd(-std::sqrt(ctx.normalization_C()) / 2.0);
  return out.prune();
}

cd inner_product_E(const HoloPolynomial& f, const HoloPolynomial& g, const MeasureContext& ctx) {
  const HoloPolynomial z3 = HoloPolynomial::monomial({0, 0, 1});
  const HoloPolynomial pf = f.compose_phi() * z3;
  const HoloPolynomial pg = g.compose_phi() * z3;
  return 4.0 * ctx.inner_product(pf, pg) / ctx.normalization_C();
}

}  // namespace tetralab
