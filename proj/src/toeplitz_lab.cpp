#include "tetralab/toeplitz_lab.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <set>

#include "tetralab/error.hpp"
#include "tetralab/parallel.hpp"

namespace tetralab {

namespace {

std::vector<int> offsets_for(const GradedBasis& basis, DegreeRange r) {
  std::vector<int> out;
  int off = 0;
  for (int n = r.lo; n <= r.hi + 1; ++n) {
    out.push_back(off);
    if (n <= r.hi) off += basis.dim(n);
  }
  return out;
}

void require_range(const GradedBasis& basis, DegreeRange r, const char* what) {
  if (r.lo < 1 || r.hi < r.lo)
    throw Error(ErrorCode::Validation, std::string(what) + ": invalid degree range [" + std::to_string(r.lo) + ", " +
                                           std::to_string(r.hi) + "]");
  if (r.hi > basis.max_degree())
    throw Error(ErrorCode::DegreeExceedsSpec, std::string(what) + ": degree " + std::to_string(r.hi) +
                                                  " exceeds basis max degree " +
                                                  std::to_string(basis.max_degree()));
}

// Homogeneous components keyed by degree.
std::map<int, HoloPolynomial> split_by_degree(const HoloPolynomial& p) {
  std::map<int, HoloPolynomial> out;
  for (const auto& [m, c] : p.terms()) out[m.degree()].add_term(m, c);
  return out;
}

struct Piece {
  HoloPolynomial P;
  HoloPolynomial Q;
  int dp;
  int dq;
};

std::vector<Piece> homogeneous_pieces(const BoundaryFunction& f) {
  std::vector<Piece> out;
  for (const auto& t : f.terms)
    for (const auto& [dp, p] : split_by_degree(t.P))
      for (const auto& [dq, q] : split_by_degree(t.Q)) out.push_back({p, q, dp, dq});
  return out;
}

// Coefficients of P * e_j over monomials_of_degree(n + deg P), one column per
// basis vector of degree n.
Eigen::MatrixXcd multiply_block(const HoloPolynomial& P, int dp, const DegreeBlock& blk) {
  const auto rows = static_cast<Eigen::Index>(monomial_count(blk.n + dp));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows, blk.vectors.cols());
  for (std::size_t k = 0; k < blk.monomials.size(); ++k)
    for (const auto& [nu, c] : P.terms()) {
      const auto pos = static_cast<Eigen::Index>(monomial_position(blk.monomials[k] + nu));
      out.row(pos) += c * blk.vectors.row(static_cast<Eigen::Index>(k));
    }
  return out;
}

HoloPolynomial z2_pow(int e) { return HoloPolynomial::monomial({0, e, 0}); }

}  // namespace

OperatorWindow OperatorWindow::restrict_to(DegreeRange r, DegreeRange c) const {
  if (r.lo < rows.lo || r.hi > rows.hi || c.lo < cols.lo || c.hi > cols.hi)
    throw Error(ErrorCode::WindowTooSmall, "restrict_to: requested ranges exceed the window");
  OperatorWindow out;
  out.rows = r;
  out.cols = c;
  out.basis_id = basis_id;
  const int r0 = row_index(r.lo, 0);
  const int c0 = col_index(c.lo, 0);
  for (int n = r.lo; n <= r.hi + 1; ++n) out.row_offsets.push_back(row_offsets[n - rows.lo] - r0);
  for (int n = c.lo; n <= c.hi + 1; ++n) out.col_offsets.push_back(col_offsets[n - cols.lo] - c0);
  out.matrix = matrix.block(r0, c0, out.row_offsets.back(), out.col_offsets.back());
  return out;
}

OperatorWindow empty_window(const GradedBasis& basis, DegreeRange rows, DegreeRange cols) {
  require_range(basis, rows, "window rows");
  require_range(basis, cols, "window columns");
  OperatorWindow w;
  w.rows = rows;
  w.cols = cols;
  w.basis_id = basis.id();
  w.row_offsets = offsets_for(basis, rows);
  w.col_offsets = offsets_for(basis, cols);
  w.matrix = Eigen::MatrixXcd::Zero(w.row_offsets.back(), w.col_offsets.back());
  return w;
}

std::map<std::pair<MultiIndex, MultiIndex>, cd> BoundaryFunction::expand() const {
  std::map<std::pair<MultiIndex, MultiIndex>, cd> out;
  for (const auto& t : terms)
    for (const auto& [mp, cp] : t.P.terms())
      for (const auto& [mq, cq] : t.Q.terms()) out[{mp, mq}] += cp * std::conj(cq);
  std::erase_if(out, [](const auto& kv) { return kv.second == cd{}; });
  return out;
}

cd BoundaryFunction::evaluate(const Triple& z) const {
  cd s = 0.0;
  for (const auto& t : terms) s += t.P.evaluate(z) * std::conj(t.Q.evaluate(z));
  return s;
}

BoundaryFunction symbol_pullback(const SymbolExpr& s) {
  BoundaryFunction f;
  const HoloPolynomial phi3 = HoloPolynomial::phi3();
  for (const auto& t : s.terms()) {
    const HoloPolynomial lift = phi3.pow(std::abs(t.k));
    HoloPolynomial P = z2_pow(t.a) * t.coeff;
    HoloPolynomial Q = z2_pow(t.b);
    if (t.k >= 0)
      P = P * lift;
    else
      Q = Q * lift;
    f.terms.push_back({std::move(P), std::move(Q)});
  }
  return f;
}

int required_quadrature_degree(const BoundaryFunction& f, int window_degree) {
  int extra = 0;
  for (const auto& pc : homogeneous_pieces(f)) extra = std::max(extra, std::min(pc.dp, pc.dq));
  return 2 * (window_degree + extra);
}

int required_quadrature_degree(const SymbolExpr& s, int window_degree) {
  return required_quadrature_degree(symbol_pullback(s), window_degree);
}

OperatorWindow multiplication_window(const BoundaryFunction& f, const GradedBasis& basis, DegreeRange rows,
                                     DegreeRange cols) {
  OperatorWindow w = empty_window(basis, rows, cols);
  const MeasureContext& ctx = basis.context();
  const auto pieces = homogeneous_pieces(f);

  struct Task {
    int m;
    int n;
  };
  std::vector<Task> tasks;
  std::set<int> degrees;
  int top = 0;
  for (int m = rows.lo; m <= rows.hi; ++m)
    for (int n = cols.lo; n <= cols.hi; ++n) {
      bool used = false;
      for (const auto& pc : pieces)
        if (n + pc.dp == m + pc.dq) {
          degrees.insert(n + pc.dp);
          top = std::max(top, n + pc.dp);
          used = true;
        }
      if (used) tasks.push_back({m, n});
    }
  if (2 * top > ctx.spec().max_degree)
    throw Error(ErrorCode::DegreeExceedsSpec, "window of degrees rows [" + std::to_string(rows.lo) + ", " +
                                                  std::to_string(rows.hi) + "] x cols [" + std::to_string(cols.lo) +
                                                  ", " + std::to_string(cols.hi) + "] requires max_degree >= " +
                                                  std::to_string(2 * top) + ", have " +
                                                  std::to_string(ctx.spec().max_degree));
  // Fill the moment caches up front; the block loop below is then read-only.
  for (int d : degrees) ctx.degree_gram(d);

  parallel_for(tasks.size(), [&](std::size_t t) {
    const auto [m, n] = tasks[t];
    const DegreeBlock& bm = basis.block(m);
    const DegreeBlock& bn = basis.block(n);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(bm.vectors.cols(), bn.vectors.cols());
    for (const auto& pc : pieces) {
      if (n + pc.dp != m + pc.dq) continue;
      const Eigen::MatrixXcd& g = ctx.degree_gram(n + pc.dp);
      const Eigen::MatrixXcd pe = multiply_block(pc.P, pc.dp, bn);
      const Eigen::MatrixXcd qe = multiply_block(pc.Q, pc.dq, bm);
      acc.noalias() += qe.adjoint() * (g.transpose() * pe);
    }
    w.matrix.block(w.row_index(m, 0), w.col_index(n, 0), acc.rows(), acc.cols()) = acc;
  });
  return w;
}

OperatorWindow toeplitz_window(const SymbolExpr& s, const GradedBasis& basis, DegreeRange rows, DegreeRange cols) {
  return multiplication_window(symbol_pullback(s), basis, rows, cols);
}

OperatorWindow toeplitz_window(const SymbolExpr& s, const GradedBasis& basis, int N) {
  return toeplitz_window(s, basis, {1, N}, {1, N});
}

CoordinateWindows coordinate_windows(const GradedBasis& basis, int N) {
  const HoloPolynomial one = HoloPolynomial::constant(1.0);
  const DegreeRange rows{1, N + 2}, cols{1, N};
  return {multiplication_window({{{HoloPolynomial::monomial({1, 0, 0}), one}}}, basis, rows, cols),
          multiplication_window({{{HoloPolynomial::monomial({0, 1, 0}), one}}}, basis, rows, cols),
          multiplication_window({{{HoloPolynomial::phi3(), one}}}, basis, rows, cols)};
}

RelationReport check_tuple_relations(const GradedBasis& basis, int N, double tol) {
  if (N < 1) throw Error(ErrorCode::Validation, "check_tuple_relations: N must be >= 1");
  const HoloPolynomial one = HoloPolynomial::constant(1.0);
  const HoloPolynomial z1 = HoloPolynomial::monomial({1, 0, 0});
  const HoloPolynomial z2 = HoloPolynomial::monomial({0, 1, 0});
  const HoloPolynomial phi3 = HoloPolynomial::phi3();
  const DegreeRange r{1, N};

  // <phi1 e_j, e_i> - <phi3 e_j, phi2 e_i> is the window of phi1 - phi3 conj(phi2).
  const BoundaryFunction f1{{{z1, one}, {phi3 * cd(-1.0), z2}}};
  const BoundaryFunction f2{{{z2, one}, {phi3 * cd(-1.0), z1}}};
  const BoundaryFunction f3{{{phi3, phi3}}};

  RelationReport rep;
  rep.N = N;
  rep.tol = tol;
  rep.residual1 = multiplication_window(f1, basis, r, r).matrix.cwiseAbs().maxCoeff();
  rep.residual2 = multiplication_window(f2, basis, r, r).matrix.cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd m3 = multiplication_window(f3, basis, r, r).matrix;
  rep.residual3 = (m3 - Eigen::MatrixXcd::Identity(m3.rows(), m3.cols())).cwiseAbs().maxCoeff();
  rep.pass = rep.residual1 <= tol && rep.residual2 <= tol && rep.residual3 <= tol;
  return rep;
}

BhResidual brown_halmos_residual(const OperatorWindow& A, const CoordinateWindows& coords, int N) {
  if (A.rows.lo != 1 || A.cols.lo != 1 || A.rows.hi < N + 2 || A.cols.hi < N + 2)
    throw Error(ErrorCode::WindowTooSmall, "brown_halmos_residual: window must cover degrees 1.." +
                                               std::to_string(N + 2) + " in rows and columns, have rows [" +
                                               std::to_string(A.rows.lo) + ", " + std::to_string(A.rows.hi) +
                                               "], cols [" + std::to_string(A.cols.lo) + ", " +
                                               std::to_string(A.cols.hi) + "]");
  if (coords.phi3.cols.hi != N)
    throw Error(ErrorCode::Validation, "brown_halmos_residual: coordinate windows built for a different N");
  const DegreeRange big{1, N + 2};
  const Eigen::MatrixXcd a = A.restrict_to(big, big).matrix;
  const Eigen::MatrixXcd& t1 = coords.phi1.matrix;
  const Eigen::MatrixXcd& t2 = coords.phi2.matrix;
  const Eigen::MatrixXcd& t3 = coords.phi3.matrix;
  const Eigen::Index d = t3.cols();

  const Eigen::MatrixXcd at3 = a * t3;
  BhResidual res;
  res.r1 = ((a * t1).topRows(d) - t2.adjoint() * at3).cwiseAbs().maxCoeff();
  res.r2 = ((a * t2).topRows(d) - t1.adjoint() * at3).cwiseAbs().maxCoeff();
  res.r3 = (t3.adjoint() * at3 - a.topLeftCorner(d, d)).cwiseAbs().maxCoeff();
  return res;
}

BhResidual brown_halmos_residual(const OperatorWindow& A, const GradedBasis& basis, int N) {
  if (A.rows.hi < N + 2 || A.cols.hi < N + 2 || A.rows.lo != 1 || A.cols.lo != 1)
    return brown_halmos_residual(A, CoordinateWindows{}, N);  // throws WindowTooSmall
  return brown_halmos_residual(A, coordinate_windows(basis, N), N);
}

double ladder_shift_check(const OperatorWindow& W, const GradedBasis& basis, int N, int r) {
  if (r < 0) throw Error(ErrorCode::Validation, "ladder_shift_check: r must be >= 0");
  if (1 + 2 * r > N)
    throw Error(ErrorCode::DegreeExceedsSpec, "ladder_shift_check: r=" + std::to_string(r) + " needs N >= " +
                                                  std::to_string(1 + 2 * r) + ", have N=" + std::to_string(N));
  if (W.rows.lo != 1 || W.cols.lo != 1 || W.rows.hi < N || W.cols.hi < N)
    throw Error(ErrorCode::WindowTooSmall, "ladder_shift_check: window must cover degrees 1.." + std::to_string(N));
  double worst = 0.0;
  for (int n = 1; n + 2 * r <= N; ++n)
    for (int m = 1; m + 2 * r <= N; ++m)
      for (int i = 0; i < basis.dim(n); ++i)
        for (int j = 0; j < basis.dim(m); ++j) {
          const cd lo = W.matrix(W.row_index(m, j), W.col_index(n, i));
          const cd hi = W.matrix(W.row_index(m + 2 * r, j), W.col_index(n + 2 * r, i));
          worst = std::max(worst, std::abs(lo - hi));
        }
  return worst;
}

double ladder_shift_check(const SymbolExpr& s, const GradedBasis& basis, int N, int r) {
  if (1 + 2 * r > N) return ladder_shift_check(OperatorWindow{}, basis, N, r);  // throws
  return ladder_shift_check(toeplitz_window(s, basis, N), basis, N, r);
}

std::vector<double> compactness_probe(const OperatorWindow& W, const GradedBasis& basis, int N, int r_max) {
  if (r_max < 0) throw Error(ErrorCode::Validation, "compactness_probe: r_max must be >= 0");
  const int seed_top = N - 2 * r_max;
  if (seed_top < 1)
    throw Error(ErrorCode::DegreeExceedsSpec, "compactness_probe: r_max=" + std::to_string(r_max) + " needs N >= " +
                                                  std::to_string(1 + 2 * r_max) + ", have N=" + std::to_string(N));
  if (W.rows.lo != 1 || W.cols.lo != 1 || W.rows.hi < N || W.cols.hi < N)
    throw Error(ErrorCode::WindowTooSmall, "compactness_probe: window must cover degrees 1.." + std::to_string(N));
  std::vector<double> profile(static_cast<std::size_t>(r_max + 1), 0.0);
  for (int r = 0; r <= r_max; ++r)
    for (int n = 1; n <= seed_top; ++n)
      for (int m = 1; m <= seed_top; ++m)
        for (int i = 0; i < basis.dim(n); ++i)
          for (int j = 0; j < basis.dim(m); ++j) {
            const double v = std::abs(W.matrix(W.row_index(m + 2 * r, j), W.col_index(n + 2 * r, i)));
            profile[static_cast<std::size_t>(r)] = std::max(profile[static_cast<std::size_t>(r)], v);
          }
  return profile;
}

std::vector<double> compactness_probe(const SymbolExpr& s, const GradedBasis& basis, int N, int r_max) {
  if (N - 2 * r_max < 1 || r_max < 0) return compactness_probe(OperatorWindow{}, basis, N, r_max);  // throws
  return compactness_probe(toeplitz_window(s, basis, N), basis, N, r_max);
}

std::vector<SymbolTerm> recovery_dictionary(int N, int dict_degree) {
  std::vector<SymbolTerm> out;
  for (const auto& t : symbol_dictionary(dict_degree, dict_degree))
    if (std::abs(t.degree_shift()) <= N - 1) out.push_back(t);
  return out;
}

RecoveryResult symbol_recovery(const OperatorWindow& A, const GradedBasis& basis, int N, int dict_degree) {
  if (N < 1 || dict_degree < 0) throw Error(ErrorCode::Validation, "symbol_recovery: need N >= 1, dict_degree >= 0");
  if (A.rows.lo != 1 || A.cols.lo != 1 || A.rows.hi < N + 2 || A.cols.hi < N + 2)
    throw Error(ErrorCode::WindowTooSmall, "symbol_recovery: window must cover degrees 1.." + std::to_string(N + 2) +
                                               " in rows and columns");
  const DegreeRange safe{1, N};
  const Eigen::MatrixXcd target = A.restrict_to(safe, safe).matrix;
  const auto dict = recovery_dictionary(N, dict_degree);
  const Eigen::Index entries = target.size();

  Eigen::MatrixXcd design(entries, static_cast<Eigen::Index>(dict.size()));
  for (std::size_t t = 0; t < dict.size(); ++t) {
    const SymbolExpr term = SymbolExpr::term(1.0, dict[t].a, dict[t].b, dict[t].k);
    const Eigen::MatrixXcd w = toeplitz_window(term, basis, safe, safe).matrix;
    design.col(static_cast<Eigen::Index>(t)) = w.reshaped();
  }
  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) < 1e-10 * sv(0))
    throw Error(ErrorCode::SingularDictionary,
                "symbol_recovery: dictionary windows are dependent on degrees 1.." + std::to_string(N) +
                    " (smallest/largest singular value " +
                    std::to_string(sv.size() ? sv(sv.size() - 1) / sv(0) : 0.0) + ")");
  const Eigen::VectorXcd c = svd.solve(target.reshaped());

  RecoveryResult out;
  std::vector<SymbolTerm> kept;
  for (std::size_t t = 0; t < dict.size(); ++t) {
    const cd v = c(static_cast<Eigen::Index>(t));
    out.coefficients.push_back({v, dict[t].a, dict[t].b, dict[t].k});
    if (std::abs(v) > 1e-9) kept.push_back({v, dict[t].a, dict[t].b, dict[t].k});
  }
  out.symbol = SymbolExpr(std::move(kept));
  const double norm = target.norm();
  out.residual = norm == 0.0 ? 0.0 : (target.reshaped() - design * c).norm() / norm;
  return out;
}

}  // namespace tetralab
