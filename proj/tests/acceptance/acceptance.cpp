// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance <path-to-tetralab-cli> <scratch-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "tetralab/error.hpp"
#include "tetralab/io.hpp"
#include "tetralab/toeplitz_lab.hpp"

using namespace tetralab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int failures = 0;

void run(int id, const char* title, double time_limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.note(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit_s > 0) o.require(secs < time_limit_s, "time limit " + fmt("%.0f s", time_limit_s));
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s  %s  [%s; %.2f s]\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::shared_ptr<const MeasureContext> context(int q) {
  return std::make_shared<const MeasureContext>(QuadratureSpec::minimal(q));
}

SymbolExpr sym(const SymbolTerm& t) { return SymbolExpr::term(t.coeff, t.a, t.b, t.k); }

int quad_for(const std::vector<SymbolTerm>& dict, int window_degree) {
  int q = 2 * window_degree;
  for (const auto& t : dict) q = std::max(q, required_quadrature_degree(sym(t), window_degree));
  return q;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <tetralab-cli> <scratch-dir>\n");
    return 2;
  }
  const std::string cli = fs::absolute(argv[1]).string();
  const fs::path scratch = fs::absolute(argv[2]);
  fs::create_directories(scratch);
  const std::uint64_t seed = 20240917;

  run(1, "dimension formulas, n = 1..12", 1.0, [](Outcome& o) {
    for (int n = 1; n <= 12; ++n) {
      const int expected = (n % 2) ? (n + 1) * (n + 1) / 4 : n * (n + 2) / 4;
      o.require(static_cast<int>(enumerate_hom_minus(n).size()) == expected, "count at n=" + std::to_string(n));
      o.require(dim_hom_minus(n) == expected, "d_n at n=" + std::to_string(n));
    }
    o.note("d_12 = " + std::to_string(dim_hom_minus(12)));
  });

  std::vector<BoundaryPointR> samples;
  run(2, "measure engine", 120.0, [&](Outcome& o) {
    MeasureContext ctx(QuadratureSpec::minimal(8));
    o.require(ctx.moment({0, 0, 0}, {0, 0, 0}) == cd(1.0), "moment(0,0) == 1");

    samples = sample_boundary_R(1000000, seed);
    const auto checks = compare_with_samples(ctx, 8, samples);
    double worst = 0.0;
    for (const auto& c : checks) worst = std::max(worst, c.deviation_in_se());
    o.require(checks.size() == 3003, "3003 monomial pairs");
    o.require(worst <= 4.0, "max deviation <= 4 SE");
    o.note(std::to_string(checks.size()) + " pairs, max " + fmt("%.3f", worst) + " SE");

    const HoloPolynomial phi3 = HoloPolynomial::phi3();
    const double det_dev = std::abs(ctx.inner_product(phi3, phi3) - 1.0);
    o.require(det_dev <= 1e-10, "|phi3|^2 integral");
    o.note("|int |phi3|^2 - 1| = " + fmt("%.1e", det_dev));

    std::mt19937_64 rng(seed);
    double zero = 0.0;
    for (int tested = 0; tested < 50;) {
      const int d = std::uniform_int_distribution<int>(1, 4)(rng);
      const auto ms = monomials_of_degree(d);
      std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
      const MultiIndex a = ms[pick(rng)], b = ms[pick(rng)];
      if (weight(a) == weight(b)) continue;
      zero = std::max(zero, std::abs(ctx.moment(a, b)));
      ++tested;
    }
    o.require(zero <= 1e-12, "selection-rule zeros");
    o.note("50 selection zeros <= " + fmt("%.1e", zero));
  });

  run(3, "normalization constant", 0, [&](Outcome& o) {
    MeasureContext ctx(QuadratureSpec::minimal(4));
    const double C = ctx.normalization_C();
    o.require(C == 4.0 * ctx.moment({0, 0, 1}, {0, 0, 1}).real(), "C == 4 moment((0,0,1),(0,0,1))");
    MeasureContext fine(ctx.spec().refined(2));
    const double drift = std::abs(fine.normalization_C() - C);
    o.require(drift <= 1e-10, "refinement stability");
    McAccumulator acc;
    for (const auto& w : samples) acc.add(std::norm(jacobian_phi(w.coords())));
    const McEstimate e = acc.estimate();
    const double z = std::abs(C - e.mean.real()) / e.standard_error;
    o.require(z <= 4.0, "MC within 4 sigma");
    o.note("C = " + fmt("%.15f", C) + ", refined drift " + fmt("%.1e", drift) + ", MC " + fmt("%.6f", e.mean.real()) +
           " (" + fmt("%.2f", z) + " sigma)");
  });

  run(4, "ladder basis, N = 8", 60.0, [](Outcome& o) {
    auto ctx = context(16);
    const GradedBasis basis = build_ladder_basis(8, ctx);
    double gram = 0.0, cross = 0.0;
    bool links = true;
    for (int n = 1; n <= 8; ++n) {
      gram = std::max(gram, orthonormality_defect(basis, n));
      links = links && ladder_links_exact(basis, n) && basis.block(n).ladder_from_prev == (n > 2 ? dim_hom_minus(n - 2) : 0);
      for (int l = n + 1; l <= 8; ++l)
        for (int i = 0; i < basis.dim(n); ++i)
          for (int j = 0; j < basis.dim(l); ++j)
            cross = std::max(cross, std::abs(ctx->inner_product(basis.vector(n, i), basis.vector(l, j))));
    }
    o.require(gram <= 1e-9, "Gram deviation");
    o.require(links, "exact ladder links");
    o.require(cross <= 1e-12, "cross-degree orthogonality");
    o.note("Gram " + fmt("%.1e", gram) + ", cross " + fmt("%.1e", cross));
  });

  run(5, "tuple relations, N = 8", 60.0, [](Outcome& o) {
    const GradedBasis basis = build_ladder_basis(8, context(20));
    const RelationReport r = check_tuple_relations(basis, 8, 1e-9);
    o.require(r.pass, "residuals <= 1e-9");
    o.note("residuals " + fmt("%.1e", r.residual1) + " " + fmt("%.1e", r.residual2) + " " + fmt("%.1e", r.residual3));
  });

  const int bh_N = 6;
  const double bh_tol = 1e-8;
  run(6, "Brown-Halmos necessity, a+b <= 2, |k| <= 1, N = 6", 0, [&](Outcome& o) {
    const auto dict = symbol_dictionary(2, 1);
    const GradedBasis basis = build_ladder_basis(bh_N + 2, context(quad_for(dict, bh_N + 2)));
    const CoordinateWindows coords = coordinate_windows(basis, bh_N);
    double worst = 0.0;
    for (const auto& t : dict)
      worst = std::max(worst, brown_halmos_residual(toeplitz_window(sym(t), basis, bh_N + 2), coords, bh_N).max());
    o.require(worst <= bh_tol, "residuals <= 1e-8");
    o.note(std::to_string(dict.size()) + " symbols, max residual " + fmt("%.1e", worst));
  });

  run(7, "Brown-Halmos detection", 0, [&](Outcome& o) {
    const GradedBasis basis = build_ladder_basis(bh_N + 2, context(quad_for(recovery_dictionary(bh_N, 3), bh_N + 2)));
    const CoordinateWindows coords = coordinate_windows(basis, bh_N);
    OperatorWindow a = empty_window(basis, {1, bh_N + 2}, {1, bh_N + 2});
    a.matrix(0, 0) = 1.0;
    const double rank1 = brown_halmos_residual(a, coords, bh_N).max();
    o.require(rank1 >= 10 * bh_tol, "rank-one projector detected");
    double weakest = rank1;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::Index n = a.matrix.rows();
      Eigen::MatrixXcd m(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cd(g(rng), g(rng));
      a.matrix = (m + m.adjoint()) / 2.0;
      o.require(symbol_recovery(a, basis, bh_N, 3).residual > 1e-2, "random window is non-Toeplitz");
      const double r = brown_halmos_residual(a, coords, bh_N).max();
      o.require(r >= 10 * bh_tol, "random window detected");
      weakest = std::min(weakest, r);
    }
    o.note("rank-one " + fmt("%.3f", rank1) + ", weakest " + fmt("%.3f", weakest) + " vs threshold 1e-7");
  });

  run(8, "compactness mechanism", 0, [](Outcome& o) {
    const auto dict = symbol_dictionary(2, 1);
    const GradedBasis basis8 = build_ladder_basis(8, context(quad_for(dict, 8)));
    double shift = 0.0;
    for (const auto& t : dict) {
      const OperatorWindow w = toeplitz_window(sym(t), basis8, 8);
      for (int r = 0; r <= 3; ++r) shift = std::max(shift, ladder_shift_check(w, basis8, 8, r));
    }
    o.require(shift <= 1e-9, "ladder shift <= 1e-9");

    // Seeds need degree room for every dictionary shift, so the profile uses
    // a wider window than the shift check.
    const int N = 12;
    const GradedBasis basis = build_ladder_basis(N, context(quad_for(dict, N)));
    double worst_ratio = 1e300;
    for (const auto& t : dict) {
      const auto p = compactness_probe(sym(t), basis, N, 3);
      const double lo = *std::min_element(p.begin(), p.end());
      o.require(p[0] > 0.0, "nonzero r=0 entry for " + sym(t).to_string());
      if (p[0] > 0.0) worst_ratio = std::min(worst_ratio, lo / p[0]);
    }
    o.require(worst_ratio >= 0.1, "profile minimum >= 0.1 of r=0 value");
    o.note("ladder shift " + fmt("%.1e", shift) + ", min profile ratio " + fmt("%.6f", worst_ratio) + " over " +
           std::to_string(dict.size()) + " symbols");
  });

  run(9, "symbol recovery", 0, [&](Outcome& o) {
    const int N = 6;
    const auto dict = recovery_dictionary(N, 3);
    const GradedBasis basis = build_ladder_basis(N + 2, context(quad_for(dict, N + 2)));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, dict.size() - 1);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<SymbolTerm> terms;
      for (int k = 0; k < 3; ++k) {
        SymbolTerm t = dict[pick(rng)];
        t.coeff = cd(u(rng), u(rng));
        terms.push_back(t);
      }
      const SymbolExpr s(terms);
      const RecoveryResult r = symbol_recovery(toeplitz_window(s, basis, N + 2), basis, N, 3);
      for (const auto& c : r.coefficients) {
        const cd truth = s.coefficient(c.a, c.b, c.k);
        worst = std::max(worst, std::abs(c.coeff - truth) / std::max(std::abs(truth), 1.0));
      }
    }
    o.require(worst <= 1e-6, "round trips within 1e-6");

    const BoundaryFunction phi1{{{HoloPolynomial::monomial({1, 0, 0}), HoloPolynomial::constant(1.0)}}};
    const OperatorWindow z1 = multiplication_window(phi1, basis, {1, N + 2}, {1, N + 2});
    const RecoveryResult r = symbol_recovery(z1, basis, N, 3);
    o.require(r.symbol.terms().size() == 1 && std::abs(r.symbol.coefficient(0, 1, 1) - 1.0) <= 1e-6,
              "z1 window recovers ~z2*z3");
    const double eq =
        (z1.matrix - toeplitz_window(parse_symbol("~z2*z3"), basis, N + 2).matrix).cwiseAbs().maxCoeff();
    o.require(eq <= 1e-9, "z1 window equals ~z2*z3 window");
    o.note("20 round trips, worst relative " + fmt("%.1e", worst) + "; z1 -> " + r.symbol.to_string() +
           ", window gap " + fmt("%.1e", eq));
  });

  run(10, "determinism across 1, 2 and 8 threads", 0, [&](Outcome& o) {
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"moments", "moments --max-degree 8 --cache cache.csv"},
        {"basis", "basis --max-degree 6 --basis-out basis.json"},
        {"relations", "relations --max-degree 6"},
        {"bh-check", "bh-check --symbol \"~z2*z3\" --max-degree 4 --window-out window.json"},
        {"ladder", "ladder --symbol \"z2*~z2\" --max-degree 6 --r 2"},
        {"probe", "probe --symbol \"~z2*z3\" --max-degree 9 --r-max 3 --csv probe.csv"},
        {"recover", "recover --symbol \"0.5*~z2*z3 + z2^2\" --max-degree 4"},
        {"coe-sample", "coe-sample --max-degree 4 --samples 20000"},
    };
    const std::vector<std::string> side_files = {"cache.csv", "basis.json", "window.json", "probe.csv"};
    int identical = 0;
    for (const auto& [name, args] : commands) {
      std::string reference;
      bool same = true;
      int runs = 0;
      for (const char* threads : {"1", "2", "8", "1"}) {
        const fs::path dir = scratch / (name + "_" + threads + "_" + std::to_string(runs++));
        fs::remove_all(dir);
        fs::create_directories(dir);
        // Relative paths keep the echoed command line identical between runs.
        const std::string cmd = "cd \"" + dir.string() + "\" && TETRALAB_THREADS=" + threads + " \"" + cli + "\" " +
                                args + " --out report.json > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        std::string bytes = "status=" + std::to_string(status) + "\n" + slurp(dir / "report.json");
        for (const auto& f : side_files)
          if (fs::exists(dir / f)) bytes += "\n--" + f + "\n" + slurp(dir / f);
        o.require(status == 0, name + " exits 0");
        if (reference.empty())
          reference = bytes;
        else
          same = same && bytes == reference;
      }
      o.require(same, name + " byte-identical");
      identical += same;
    }
    o.note(std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
