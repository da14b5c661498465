#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tetralab/error.hpp"
#include "tetralab/toeplitz_lab.hpp"

using namespace tetralab;

namespace {

constexpr double kBhTol = 1e-8;

// Bases are expensive enough to share between test cases.
const GradedBasis& basis_for(int N, int q) {
  static std::map<std::pair<int, int>, GradedBasis> cache;
  auto it = cache.find({N, q});
  if (it == cache.end())
    it = cache.emplace(std::pair{N, q}, build_ladder_basis(N, std::make_shared<const MeasureContext>(QuadratureSpec::minimal(q))))
             .first;
  return it->second;
}

SymbolExpr sym(const SymbolTerm& t) { return SymbolExpr::term(t.coeff, t.a, t.b, t.k); }

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cd(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("symbol_pullback") {
  const BoundaryFunction f = symbol_pullback(parse_symbol("z3"));
  const auto terms = f.expand();
  CHECK(terms.size() == 2);
  CHECK(terms.at({{1, 1, 0}, {0, 0, 0}}) == cd(1.0));
  CHECK(terms.at({{0, 0, 2}, {0, 0, 0}}) == cd(-1.0));

  const auto one = symbol_pullback(parse_symbol("1")).expand();
  CHECK(one.size() == 1);
  CHECK(one.at({{0, 0, 0}, {0, 0, 0}}) == cd(1.0));

  // sigma-invariant: only even z3 exponents on both sides.
  for (const auto& [key, c] : symbol_pullback(parse_symbol("~z2*z3 + z2^2*~z3 + 0.3*z3^2")).expand()) {
    CHECK(key.first.a3 % 2 == 0);
    CHECK(key.second.a3 % 2 == 0);
  }

  // conj(phi2) phi3 agrees with phi1 on the boundary.
  const GradedBasis& basis = basis_for(6, 16);
  const BoundaryFunction phi1{{{HoloPolynomial::monomial({1, 0, 0}), HoloPolynomial::constant(1.0)}}};
  const OperatorWindow a = multiplication_window(phi1, basis, {1, 6}, {1, 6});
  const OperatorWindow b = toeplitz_window(parse_symbol("~z2*z3"), basis, 6);
  CHECK(max_abs(a.matrix - b.matrix) <= 1e-10);

  for (const auto& w : sample_boundary_R(100, 3)) {
    const Triple p = map_phi(w.coords());
    const SymbolExpr s = parse_symbol("(0.5-1i)*~z2*z3 + z2^2 - 2*~z3");
    CHECK(std::abs(symbol_pullback(s).evaluate(w.coords()) - s.evaluate(p[1], p[2])) <= 1e-12);
  }
}

TEST_CASE("toeplitz_window examples") {
  const int N = 6;
  const GradedBasis& basis = basis_for(N, 16);

  SUBCASE("constant symbol is the identity") {
    const OperatorWindow w = toeplitz_window(parse_symbol("1"), basis, N);
    CHECK(w.matrix.rows() == basis.total_dim(N));
    CHECK(w.basis_id == basis.id());
    CHECK(max_abs(w.matrix - Eigen::MatrixXcd::Identity(w.matrix.rows(), w.matrix.cols())) <= 1e-12);
  }
  SUBCASE("z3 is the ladder shift") {
    const OperatorWindow w = toeplitz_window(parse_symbol("z3"), basis, N);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(w.matrix.rows(), w.matrix.cols());
    for (int n = 1; n + 2 <= N; ++n)
      for (int i = 0; i < basis.dim(n); ++i) expected(w.row_index(n + 2, i), w.col_index(n, i)) = 1.0;
    CHECK(max_abs(w.matrix - expected) <= 1e-10);
  }
  SUBCASE("~z3 is the adjoint of z3") {
    const OperatorWindow up = toeplitz_window(parse_symbol("z3"), basis, N);
    const OperatorWindow down = toeplitz_window(parse_symbol("~z3"), basis, N);
    CHECK(max_abs(down.matrix - up.matrix.adjoint()) <= 1e-12);
  }
  SUBCASE("adjoint consistency") {
    for (const char* text : {"~z2*z3", "(0.3+0.7i)*z2^2*~z3 + z2", "z2*~z2", "~z2^2*z3^2 - 0.5*z2"}) {
      const SymbolExpr s = parse_symbol(text);
      const OperatorWindow w = toeplitz_window(s, basis, N);
      const OperatorWindow c = toeplitz_window(s.conj(), basis, N);
      CHECK(max_abs(c.matrix - w.matrix.adjoint()) <= 1e-12);
    }
  }
  SUBCASE("restrict_to and ranges") {
    const OperatorWindow w = toeplitz_window(parse_symbol("~z2*z3"), basis, N);
    const OperatorWindow part = toeplitz_window(parse_symbol("~z2*z3"), basis, {2, 4}, {1, 3});
    const OperatorWindow cut = w.restrict_to({2, 4}, {1, 3});
    CHECK(part.matrix.rows() == basis.dim(2) + basis.dim(3) + basis.dim(4));
    CHECK(max_abs(part.matrix - cut.matrix) == 0.0);
    CHECK_THROWS_AS(toeplitz_window(parse_symbol("z3"), basis, N + 1), Error);
  }
}

TEST_CASE("toeplitz_window against sampling") {
  const int N = 3;
  const GradedBasis& basis = basis_for(N, 8);
  const OperatorWindow w = toeplitz_window(parse_symbol("z2"), basis, N);
  const auto pts = sample_boundary_R(400000, 99);
  std::vector<HoloPolynomial> vecs;
  for (int n = 1; n <= N; ++n)
    for (int i = 0; i < basis.dim(n); ++i) vecs.push_back(basis.vector(n, i));
  double worst = 0.0;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < vecs.size(); ++j) {
      McAccumulator acc;
      for (const auto& p : pts) {
        const Triple z = p.coords();
        acc.add(z[1] * vecs[j].evaluate(z) * std::conj(vecs[i].evaluate(z)));
      }
      const McEstimate e = acc.estimate();
      const cd q = w.matrix(static_cast<int>(i), static_cast<int>(j));
      const double dev = std::abs(q - e.mean) / e.standard_error;
      worst = std::max(worst, e.standard_error > 0 ? dev : std::abs(q - e.mean));
    }
  CHECK(worst <= 4.0);
}

TEST_CASE("coordinate_windows") {
  const int N = 6;
  const GradedBasis& basis = basis_for(N + 2, 16);
  const CoordinateWindows c = coordinate_windows(basis, N);
  const int cols = basis.total_dim(N);
  CHECK(c.phi3.matrix.rows() == basis.total_dim(N + 2));
  CHECK(c.phi3.matrix.cols() == cols);
  CHECK(max_abs(c.phi3.matrix.adjoint() * c.phi3.matrix - Eigen::MatrixXcd::Identity(cols, cols)) <= 1e-10);

  // A_a A_b e_j for column degree <= N - 4 stays inside both windows.
  const int safe = basis.total_dim(N - 4);
  const Eigen::MatrixXcd* m[3] = {&c.phi1.matrix, &c.phi2.matrix, &c.phi3.matrix};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const Eigen::MatrixXcd ab = *m[a] * m[b]->topLeftCorner(cols, safe);
      const Eigen::MatrixXcd ba = *m[b] * m[a]->topLeftCorner(cols, safe);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(max_abs(ab - ba) <= 1e-10);
    }

  const CoordinateWindows one = coordinate_windows(basis, 1);
  CHECK(one.phi3.matrix.cols() == 1);
  CHECK(std::abs(one.phi3.matrix(one.phi3.row_index(3, 0), 0) - 1.0) <= 1e-12);
  CHECK(std::abs(one.phi3.matrix.norm() - 1.0) <= 1e-12);
}

TEST_CASE("check_tuple_relations") {
  const GradedBasis& basis = basis_for(8, 20);
  const RelationReport r = check_tuple_relations(basis, 6, 1e-9);
  CHECK(r.N == 6);
  CHECK(r.tol == 1e-9);
  CHECK(r.residual1 <= 1e-9);
  CHECK(r.residual2 <= 1e-9);
  CHECK(r.residual3 <= 1e-9);
  CHECK(r.pass);

  const RelationReport r1 = check_tuple_relations(basis, 1, 1e-12);
  CHECK(r1.residual3 <= 1e-12);
  CHECK(r1.pass);

  const RelationReport strict = check_tuple_relations(basis, 8, 0.0);
  CHECK(strict.residual1 <= 1e-9);
  CHECK(strict.pass == (std::max({strict.residual1, strict.residual2, strict.residual3}) <= 0.0));
}

TEST_CASE("brown_halmos_residual") {
  const int N = 6;
  const GradedBasis& basis = basis_for(N + 2, 20);
  const CoordinateWindows coords = coordinate_windows(basis, N);

  SUBCASE("z1 proxy symbol") {
    const OperatorWindow a = toeplitz_window(parse_symbol("~z2*z3"), basis, N + 2);
    CHECK(brown_halmos_residual(a, coords, N).max() <= kBhTol);
  }
  SUBCASE("identity") {
    const OperatorWindow a = toeplitz_window(parse_symbol("1"), basis, N + 2);
    CHECK(brown_halmos_residual(a, basis, N).max() <= 1e-12);
  }
  SUBCASE("rank-one projector onto e_1^1") {
    OperatorWindow a = empty_window(basis, {1, N + 2}, {1, N + 2});
    a.matrix(0, 0) = 1.0;
    const BhResidual r = brown_halmos_residual(a, coords, N);
    // <A phi3 e, phi3 e> = 0 while <A e, e> = 1 for e = e_1^1.
    CHECK(std::abs(r.r3 - 1.0) <= 1e-12);
    CHECK(r.r3 >= 10 * kBhTol);
  }
  SUBCASE("window too small") {
    const OperatorWindow a = toeplitz_window(parse_symbol("1"), basis, N + 1);
    try {
      brown_halmos_residual(a, coords, N);
      FAIL("expected window-too-small");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::WindowTooSmall);
      CHECK(std::string(e.what()).find("1..8") != std::string::npos);
    }
  }
}

TEST_CASE("Brown-Halmos necessity sweep") {
  const int N = 6;
  const auto dict = symbol_dictionary(2, 2);
  CHECK(dict.size() == 30);
  int q = 0;
  for (const auto& t : dict) q = std::max(q, required_quadrature_degree(sym(t), N + 2));
  const GradedBasis& basis = basis_for(N + 2, q);
  const CoordinateWindows coords = coordinate_windows(basis, N);
  for (const auto& t : dict) {
    const SymbolExpr s = sym(t);
    CAPTURE(s.to_string());
    CHECK(brown_halmos_residual(toeplitz_window(s, basis, N + 2), coords, N).max() <= kBhTol);
  }
}

TEST_CASE("Brown-Halmos detection of non-Toeplitz windows") {
  const int N = 6;
  const GradedBasis& basis = basis_for(N + 2, 22);
  const CoordinateWindows coords = coordinate_windows(basis, N);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    OperatorWindow a = empty_window(basis, {1, N + 2}, {1, N + 2});
    a.matrix = random_hermitian(static_cast<int>(a.matrix.rows()), rng);
    CHECK(symbol_recovery(a, basis, N, 3).residual > 1e-2);
    CHECK(brown_halmos_residual(a, coords, N).max() >= 10 * kBhTol);
  }
}

TEST_CASE("ladder_shift_check") {
  const int N = 8;
  const GradedBasis& basis = basis_for(N, 20);
  for (int r = 0; r <= 3; ++r) CHECK(ladder_shift_check(parse_symbol("1"), basis, N, r) <= 1e-12);
  CHECK(ladder_shift_check(parse_symbol("~z2*z3"), basis, N, 0) == 0.0);
  for (int r = 1; r <= 3; ++r) CHECK(ladder_shift_check(parse_symbol("z2*~z2"), basis, N, r) <= 1e-9);

  const auto dict = symbol_dictionary(2, 1);
  for (const auto& t : dict) {
    const SymbolExpr s = sym(t);
    if (required_quadrature_degree(s, N) > 20) continue;
    CAPTURE(s.to_string());
    for (int r = 1; r <= 3; ++r) CHECK(ladder_shift_check(s, basis, N, r) <= 1e-9);
  }
}

TEST_CASE("compactness_probe") {
  const int N = 8;
  const GradedBasis& basis = basis_for(N, 20);
  for (double v : compactness_probe(SymbolExpr{}, basis, N, 3)) CHECK(v == 0.0);
  // Seeds run over degrees <= N - 2 r_max, which must leave room for the +2 shift.
  CHECK(compactness_probe(parse_symbol("z3"), basis, N, 2).size() == 3);
  for (double v : compactness_probe(parse_symbol("z3"), basis, N, 2)) CHECK(std::abs(v - 1.0) <= 1e-12);

  const auto profile = compactness_probe(parse_symbol("~z2*z3"), basis, N, 3);
  REQUIRE(profile.size() == 4);
  const double rho = profile[0];
  CHECK(rho > 0.1);
  for (double v : profile) CHECK(std::abs(v - rho) <= 1e-9);

  const OperatorWindow w = toeplitz_window(parse_symbol("~z2*z3"), basis, N);
  CHECK(compactness_probe(w, basis, N, 3) == profile);
  CHECK_THROWS_AS(compactness_probe(parse_symbol("z3"), basis, N, 5), Error);
}

TEST_CASE("symbol_recovery") {
  const int N = 6;
  int q = 0;
  for (const auto& t : recovery_dictionary(N, 3)) q = std::max(q, required_quadrature_degree(sym(t), N + 2));
  const GradedBasis& basis = basis_for(N + 2, q);

  SUBCASE("round trip") {
    const OperatorWindow a = toeplitz_window(parse_symbol("0.5*~z2*z3 + z2^2"), basis, N + 2);
    const RecoveryResult r = symbol_recovery(a, basis, N, 3);
    CHECK(r.residual <= 1e-6);
    CHECK(std::abs(r.symbol.coefficient(0, 1, 1) - 0.5) <= 0.5e-6);
    CHECK(std::abs(r.symbol.coefficient(2, 0, 0) - 1.0) <= 1e-6);
    CHECK(r.symbol.terms().size() == 2);
  }
  SUBCASE("zero window") {
    const RecoveryResult r = symbol_recovery(empty_window(basis, {1, N + 2}, {1, N + 2}), basis, N, 3);
    CHECK(r.symbol.is_zero());
    CHECK(r.residual == 0.0);
  }
  SUBCASE("multiplication by z1 recovers ~z2*z3") {
    const BoundaryFunction phi1{{{HoloPolynomial::monomial({1, 0, 0}), HoloPolynomial::constant(1.0)}}};
    const OperatorWindow a = multiplication_window(phi1, basis, {1, N + 2}, {1, N + 2});
    const RecoveryResult r = symbol_recovery(a, basis, N, 3);
    REQUIRE(r.symbol.terms().size() == 1);
    CHECK(std::abs(r.symbol.coefficient(0, 1, 1) - 1.0) <= 1e-6);
    const OperatorWindow b = toeplitz_window(parse_symbol("~z2*z3"), basis, N + 2);
    CHECK(max_abs(a.matrix - b.matrix) <= 1e-9);
  }
  SUBCASE("20 random dictionary symbols") {
    const auto dict = recovery_dictionary(N, 3);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, dict.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<SymbolTerm> terms;
      for (int k = 0; k < 3; ++k) {
        SymbolTerm t = dict[pick(rng)];
        t.coeff = cd(u(rng), u(rng));
        terms.push_back(t);
      }
      const SymbolExpr s(terms);
      const RecoveryResult r = symbol_recovery(toeplitz_window(s, basis, N + 2), basis, N, 3);
      CAPTURE(s.to_string());
      for (const auto& t : s.terms()) CHECK(std::abs(r.symbol.coefficient(t.a, t.b, t.k) - t.coeff) <= 1e-6 * std::abs(t.coeff));
      CHECK(r.symbol.terms().size() == s.terms().size());
    }
  }
  SUBCASE("dictionary pruning") {
    for (const auto& t : recovery_dictionary(N, 3)) CHECK(std::abs(t.degree_shift()) <= N - 1);
    CHECK_THROWS_AS(symbol_recovery(toeplitz_window(parse_symbol("1"), basis, N + 1), basis, N, 3), Error);
  }
}
