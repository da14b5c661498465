#include "tetralab/boundary_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "tetralab/error.hpp"
#include "tetralab/parallel.hpp"

namespace tetralab {

// ---------------------------------------------------------------------------
// Boundary points and the proper map

Eigen::Matrix2cd BoundaryPointR::matrix() const {
  Eigen::Matrix2cd w;
  w << w11, w12, w12, w22;
  return w;
}

double BoundaryPointR::unitarity_defect() const {
  const Eigen::Matrix2cd w = matrix();
  return (w.adjoint() * w - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

Triple map_phi(const Triple& z) { return {z[0], z[1], z[0] * z[1] - z[2] * z[2]}; }

cd jacobian_phi(const Triple& z) { return -2.0 * z[2]; }

Triple involution_sigma(const Triple& z) { return {z[0], z[1], -z[2]}; }

bool shilov_E_membership(const Triple& z, double tol) {
  return std::abs(z[0] - std::conj(z[1]) * z[2]) <= tol && std::abs(std::abs(z[2]) - 1.0) <= tol &&
         std::abs(z[1]) <= 1.0 + tol;
}

// ---------------------------------------------------------------------------
// Sampling

Eigen::Matrix2cd haar_unitary_sample(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    Eigen::Matrix2cd z;
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        z(i, j) = cd(re, im);
      }
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
    const Eigen::Matrix2cd r = qr.matrixQR();
    if (r(0, 0) == cd{} || r(1, 1) == cd{}) continue;
    Eigen::Matrix2cd q = qr.householderQ();
    for (int i = 0; i < 2; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
  }
}

std::vector<BoundaryPointR> sample_boundary_R(int count, std::uint64_t seed) {
  if (count < 1) throw Error(ErrorCode::Validation, "sample_boundary_R: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<BoundaryPointR> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    const Eigen::Matrix2cd u = haar_unitary_sample(rng);
    const Eigen::Matrix2cd w = u * u.transpose();
    out.push_back({w(0, 0), w(1, 1), w(0, 1)});
  }
  return out;
}

McEstimate McAccumulator::estimate() const {
  if (n_ == 0) return {cd{}, std::numeric_limits<double>::infinity(), 0};
  const double n = static_cast<double>(n_);
  const cd mean = sum_ / n;
  if (n_ < 2) return {mean, std::numeric_limits<double>::infinity(), n_};
  const double var = std::max(sum_sq_ / n - std::norm(mean), 0.0);
  return {mean, std::sqrt(var / (n - 1.0)), n_};
}

namespace {
cd ipow(cd z, int e) {
  cd r = 1.0;
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}
}  // namespace

cd monomial_pair_value(const BoundaryPointR& w, const MultiIndex& alpha, const MultiIndex& beta) {
  const cd za = ipow(w.w11, alpha.a1) * ipow(w.w22, alpha.a2) * ipow(w.w12, alpha.a3);
  const cd zb = ipow(w.w11, beta.a1) * ipow(w.w22, beta.a2) * ipow(w.w12, beta.a3);
  return za * std::conj(zb);
}

// ---------------------------------------------------------------------------
// Quadrature

QuadratureSpec QuadratureSpec::minimal(int max_degree) {
  if (max_degree < 0) throw Error(ErrorCode::Validation, "max_degree must be >= 0");
  return {max_degree, 2 * max_degree + 1, 2 * max_degree + 1, max_degree + 2};
}

QuadratureSpec QuadratureSpec::refined(int factor) const {
  return {max_degree, nodes_psi * factor, nodes_chi * factor, nodes_t * factor};
}

void QuadratureSpec::validate() const {
  const QuadratureSpec m = minimal(max_degree);
  if (nodes_psi < m.nodes_psi || nodes_chi < m.nodes_chi || nodes_t < m.nodes_t)
    throw Error(ErrorCode::Validation,
                "quadrature node counts (" + std::to_string(nodes_psi) + "," + std::to_string(nodes_chi) + "," +
                    std::to_string(nodes_t) + ") below the exactness minimum (" + std::to_string(m.nodes_psi) + "," +
                    std::to_string(m.nodes_chi) + "," + std::to_string(m.nodes_t) + ") for max_degree " +
                    std::to_string(max_degree));
}

namespace {

// Legendre P_n and P_n' at x (three-term recurrence).
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

// Gauss-Legendre nodes and weights mapped to [0, 1] (weights sum to 1).
void gauss_legendre_unit(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double dp = legendre(n, z).second;
    x[i] = 0.5 * (1.0 + z);
    w[i] = 1.0 / ((1.0 - z * z) * dp * dp);  // 2 / ((1 - z^2) P'^2), halved for [0, 1]
  }
}

}  // namespace

struct MeasureContext::Grid {
  std::size_t nodes = 0;
  std::vector<double> weight;
  // powers[p * nodes + k] of w11 and w12 at node k; on this slice w22 = conj(w11)
  std::vector<cd> pow11;
  std::vector<cd> pow12;
};

MeasureContext::MeasureContext(QuadratureSpec spec) : spec_(spec) { spec_.validate(); }

MeasureContext::~MeasureContext() = default;

const MeasureContext::Grid& MeasureContext::grid() const {
  std::call_once(grid_once_, [this] {
    auto g = std::make_unique<Grid>();
    std::vector<double> tx, tw;
    gauss_legendre_unit(spec_.nodes_t, tx, tw);
    const int np = spec_.nodes_psi, nc = spec_.nodes_chi, nt = spec_.nodes_t;
    g->nodes = spec_.node_count();
    g->weight.resize(g->nodes);
    const int pmax = spec_.max_degree;
    g->pow11.assign(static_cast<std::size_t>(pmax + 1) * g->nodes, cd{});
    g->pow12.assign(static_cast<std::size_t>(pmax + 1) * g->nodes, cd{});
    std::size_t k = 0;
    for (int ip = 0; ip < np; ++ip) {
      const cd ep = std::polar(1.0, 2.0 * std::numbers::pi * ip / np);
      for (int ic = 0; ic < nc; ++ic) {
        const cd ec = std::polar(1.0, 2.0 * std::numbers::pi * ic / nc);
        for (int it = 0; it < nt; ++it, ++k) {
          const cd a = ep * std::sqrt(tx[it]);
          const cd b = ec * std::sqrt(1.0 - tx[it]);
          // V = [[a, b], [-conj(b), conj(a)]],  V V^T
          const cd w11 = a * a + b * b;
          const cd w12 = std::conj(a) * b - a * std::conj(b);
          g->weight[k] = tw[it] / (static_cast<double>(np) * nc);
          cd p11 = 1.0, p12 = 1.0;
          for (int p = 0; p <= pmax; ++p) {
            g->pow11[static_cast<std::size_t>(p) * g->nodes + k] = p11;
            g->pow12[static_cast<std::size_t>(p) * g->nodes + k] = p12;
            p11 *= w11;
            p12 *= w12;
          }
        }
      }
    }
    grid_ = std::move(g);
  });
  return *grid_;
}

cd MeasureContext::integrate(const MomentKey& key) const {
  const Grid& g = grid();
  const auto& a = key.alpha;
  const auto& b = key.beta;
  // z^a conj(z^b) = w11^(a1+b2) conj(w11)^(a2+b1) w12^a3 conj(w12)^b3
  const cd* x = &g.pow11[static_cast<std::size_t>(a.a1 + b.a2) * g.nodes];
  const cd* xc = &g.pow11[static_cast<std::size_t>(a.a2 + b.a1) * g.nodes];
  const cd* y = &g.pow12[static_cast<std::size_t>(a.a3) * g.nodes];
  const cd* yc = &g.pow12[static_cast<std::size_t>(b.a3) * g.nodes];
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < g.nodes; ++k) {
    const cd v = g.weight[k] * x[k] * std::conj(xc[k]) * y[k] * std::conj(yc[k]);
    re += v.real();
    im += v.imag();
  }
  quadrature_evaluations_.fetch_add(1);
  // Keys that are their own swap-conjugate have real moments; drop the
  // rounding residue so both orientations read back identically.
  if (b == a || b == a.swapped()) im = 0.0;
  return {re, im};
}

MomentKey canonical_key(const MultiIndex& alpha, const MultiIndex& beta, bool& conjugate) {
  const MomentKey candidates[4] = {
      {alpha, beta}, {beta, alpha}, {alpha.swapped(), beta.swapped()}, {beta.swapped(), alpha.swapped()}};
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (candidates[i] < candidates[best]) best = i;
  conjugate = (best % 2) == 1;
  return candidates[best];
}

void MeasureContext::require_degree(int combined, const char* what) const {
  if (combined > spec_.max_degree)
    throw Error(ErrorCode::DegreeExceedsSpec, std::string(what) + ": combined degree " + std::to_string(combined) +
                                                  " exceeds quadrature max_degree " +
                                                  std::to_string(spec_.max_degree) + "; requires max_degree >= " +
                                                  std::to_string(combined));
}

cd MeasureContext::moment(const MultiIndex& alpha, const MultiIndex& beta) const {
  require_degree(alpha.degree() + beta.degree(), "moment");
  if (alpha.degree() != beta.degree()) return 0.0;
  if (alpha.degree() == 0) return 1.0;
  bool conj = false;
  const MomentKey key = canonical_key(alpha, beta, conj);
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return conj ? std::conj(it->second) : it->second;
  }
  const cd v = integrate(key);
  {
    std::unique_lock lock(mutex_);
    cache_.try_emplace(key, v);
  }
  return conj ? std::conj(v) : v;
}

void MeasureContext::prefetch(const std::vector<MomentKey>& pairs) const {
  std::set<MomentKey> missing;
  {
    std::shared_lock lock(mutex_);
    for (const auto& p : pairs) {
      require_degree(p.alpha.degree() + p.beta.degree(), "moment");
      if (p.alpha.degree() != p.beta.degree() || p.alpha.degree() == 0) continue;
      bool conj = false;
      const MomentKey key = canonical_key(p.alpha, p.beta, conj);
      if (!cache_.contains(key)) missing.insert(key);
    }
  }
  if (missing.empty()) return;
  const std::vector<MomentKey> todo(missing.begin(), missing.end());
  std::vector<cd> values(todo.size());
  grid();
  parallel_for(todo.size(), [&](std::size_t i) { values[i] = integrate(todo[i]); });
  std::unique_lock lock(mutex_);
  for (std::size_t i = 0; i < todo.size(); ++i) cache_.try_emplace(todo[i], values[i]);
}

double MeasureContext::normalization_C() const {
  if (spec_.max_degree < 2) throw Error(ErrorCode::DegreeExceedsSpec, "normalization_C: requires max_degree >= 2");
  return 4.0 * moment({0, 0, 1}, {0, 0, 1}).real();
}

const Eigen::MatrixXcd& MeasureContext::degree_gram(int d) const {
  require_degree(2 * d, "degree_gram");
  std::lock_guard lock(gram_mutex_);
  if (auto it = grams_.find(d); it != grams_.end()) return *it->second;
  const auto mons = monomials_of_degree(d);
  std::vector<MomentKey> pairs;
  for (const auto& a : mons)
    for (const auto& b : mons)
      if (weight(a) == weight(b)) pairs.push_back({a, b});
  prefetch(pairs);
  auto g = std::make_unique<Eigen::MatrixXcd>(Eigen::MatrixXcd::Zero(mons.size(), mons.size()));
  for (const auto& p : pairs)
    (*g)(monomial_position(p.alpha), monomial_position(p.beta)) = moment(p.alpha, p.beta);
  auto [it, _] = grams_.emplace(d, std::move(g));
  return *it->second;
}

cd MeasureContext::inner_product(const HoloPolynomial& f, const HoloPolynomial& g) const {
  std::map<int, std::vector<std::pair<MultiIndex, cd>>> fd, gd;
  for (const auto& [m, c] : f.terms()) fd[m.degree()].emplace_back(m, c);
  for (const auto& [m, c] : g.terms()) gd[m.degree()].emplace_back(m, c);
  cd total = 0.0;
  for (const auto& [d, fterms] : fd) {
    auto it = gd.find(d);
    if (it == gd.end()) continue;
    const Eigen::MatrixXcd& gram = degree_gram(d);
    for (const auto& [ma, ca] : fterms)
      for (const auto& [mb, cb] : it->second)
        total += ca * std::conj(cb) * gram(monomial_position(ma), monomial_position(mb));
  }
  return total;
}

std::map<MomentKey, cd> MeasureContext::cache_snapshot() const {
  std::shared_lock lock(mutex_);
  return cache_;
}

void MeasureContext::insert_cached(const MomentKey& key, cd value) {
  std::unique_lock lock(mutex_);
  cache_.insert_or_assign(key, value);
}

cd moment(const MultiIndex& alpha, const MultiIndex& beta, const MeasureContext& ctx) {
  return ctx.moment(alpha, beta);
}

double normalization_C(const MeasureContext& ctx) { return ctx.normalization_C(); }

cd moment_E(const MultiIndex& alpha, const MultiIndex& beta, const MeasureContext& ctx) {
  // Pull back through phi and multiply by J_phi / (-2) = z3; |J_phi|^2 = 4 |z3|^2.
  const HoloPolynomial z3 = HoloPolynomial::monomial({0, 0, 1});
  const HoloPolynomial pa = HoloPolynomial::monomial(alpha, 1.0, Ambient::Tetrablock).compose_phi() * z3;
  const HoloPolynomial pb = HoloPolynomial::monomial(beta, 1.0, Ambient::Tetrablock).compose_phi() * z3;
  const int combined = pa.degree() + pb.degree();
  if (combined > ctx.spec().max_degree)
    throw Error(ErrorCode::DegreeExceedsSpec, "moment_E: pullback degree " + std::to_string(combined) +
                                                  " exceeds quadrature max_degree " +
                                                  std::to_string(ctx.spec().max_degree) + "; requires max_degree >= " +
                                                  std::to_string(combined));
  return 4.0 * ctx.inner_product(pa, pb) / ctx.normalization_C();
}

double MomentCheck::deviation_in_se() const {
  const double gap = std::abs(quadrature - mc.mean);
  if (mc.standard_error > 0.0) return gap / mc.standard_error;
  return gap <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

std::vector<MomentCheck> compare_with_samples(const MeasureContext& ctx, int max_combined,
                                              const std::vector<BoundaryPointR>& samples) {
  if (max_combined < 0) throw Error(ErrorCode::Validation, "compare_with_samples: max_combined must be >= 0");
  std::vector<MultiIndex> mons;
  for (int d = 0; d <= max_combined; ++d)
    for (const auto& m : monomials_of_degree(d)) mons.push_back(m);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<MomentKey> keys;
  for (std::size_t i = 0; i < mons.size(); ++i)
    for (std::size_t j = 0; j < mons.size(); ++j)
      if (mons[i].degree() + mons[j].degree() <= max_combined) {
        pairs.emplace_back(i, j);
        keys.push_back({mons[i], mons[j]});
      }
  ctx.prefetch(keys);

  constexpr std::size_t kChunks = 64;
  const std::size_t per = (samples.size() + kChunks - 1) / kChunks;
  std::vector<std::vector<McAccumulator>> partial(kChunks);
  parallel_for(kChunks, [&](std::size_t c) {
    // Plain arithmetic on split real/imag parts; std::complex multiplication
    // goes through the NaN-aware library path and dominates otherwise.
    const std::size_t nm = mons.size(), np = pairs.size();
    std::vector<double> re(nm), im(nm), nrm(nm), sre(np, 0.0), sim(np, 0.0), ssq(np, 0.0);
    const std::size_t begin = std::min(samples.size(), c * per);
    const std::size_t end = std::min(samples.size(), (c + 1) * per);
    for (std::size_t s = begin; s < end; ++s) {
      const BoundaryPointR& w = samples[s];
      for (std::size_t i = 0; i < nm; ++i) {
        const MultiIndex& m = mons[i];
        const cd v = ipow(w.w11, m.a1) * ipow(w.w22, m.a2) * ipow(w.w12, m.a3);
        re[i] = v.real();
        im[i] = v.imag();
        nrm[i] = std::norm(v);
      }
      for (std::size_t p = 0; p < np; ++p) {
        const std::size_t i = pairs[p].first, j = pairs[p].second;
        sre[p] += re[i] * re[j] + im[i] * im[j];
        sim[p] += im[i] * re[j] - re[i] * im[j];
        ssq[p] += nrm[i] * nrm[j];
      }
    }
    partial[c].resize(np);
    for (std::size_t p = 0; p < np; ++p) partial[c][p] = McAccumulator(end - begin, {sre[p], sim[p]}, ssq[p]);
  });

  std::vector<MomentCheck> out;
  out.reserve(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    McAccumulator total;
    for (std::size_t c = 0; c < kChunks; ++c) total.merge(partial[c][p]);
    const MultiIndex& a = mons[pairs[p].first];
    const MultiIndex& b = mons[pairs[p].second];
    out.push_back({a, b, ctx.moment(a, b), total.estimate()});
  }
  return out;
}

}  // namespace tetralab
