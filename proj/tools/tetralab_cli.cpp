// tetralab command-line front end. Every command validates its parameters,
// derives the quadrature degree it needs, runs, and writes one JSON report.
// Exit status: 0 all checks pass, 1 numeric failure, 2 validation error.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <random>
#include <set>

#include "tetralab/error.hpp"
#include "tetralab/io.hpp"
#include "tetralab/toeplitz_lab.hpp"

using namespace tetralab;
using nlohmann::json;

namespace {

constexpr const char* kSchema = "tetralab.report/1";

struct Common {
  int max_degree = -1;
  int quad_degree = -1;
  std::optional<double> tol;
  std::string out;
  std::string cache;
  std::string basis;
  std::uint64_t seed = 20240917;
  bool timing = false;
};

struct Options {
  Common c;
  std::string symbol;
  std::string matrix;
  std::string window_out;
  std::string basis_out;
  std::string csv;
  int r = 3;
  int r_max = 3;
  int dict_degree = 3;
  int samples = 100000;
};

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::Validation, msg); }

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::RankDeficient:
    case ErrorCode::GramSchmidtBreakdown:
    case ErrorCode::SingularDictionary:
      return 1;
    default:
      return 2;
  }
}

json measure_json(const MeasureContext& ctx) {
  const QuadratureSpec& s = ctx.spec();
  json m{{"max_degree", s.max_degree}, {"nodes_psi", s.nodes_psi}, {"nodes_chi", s.nodes_chi}, {"nodes_t", s.nodes_t}};
  m["C"] = s.max_degree >= 2 ? json(ctx.normalization_C()) : json(nullptr);
  return m;
}

json complex_json(cd v) { return json::array({v.real(), v.imag()}); }

// Holds the moment context and basis for one run, loading them from files
// when asked to.
class Session {
 public:
  explicit Session(const Common& c) : c_(c) {}

  void require_max_degree(int lo) const {
    if (c_.max_degree < lo) invalid("--max-degree must be >= " + std::to_string(lo));
    if (c_.max_degree > 40) invalid("--max-degree must be <= 40");
  }

  // Quadrature degree: --quad-degree if given (must be >= required), else
  // required. A loaded basis fixes it to the basis' recorded spec.
  int quad_degree(int required) const {
    if (!c_.basis.empty()) {
      const int have = basis_spec().max_degree;
      if (have < required)
        throw Error(ErrorCode::DegreeExceedsSpec, "basis file quadrature max_degree " + std::to_string(have) +
                                                      " is below the required " + std::to_string(required));
      return have;
    }
    if (c_.quad_degree < 0) return required;
    if (c_.quad_degree < required)
      throw Error(ErrorCode::DegreeExceedsSpec,
                  "--quad-degree " + std::to_string(c_.quad_degree) + " below the required " + std::to_string(required));
    if (c_.quad_degree > 80) invalid("--quad-degree must be <= 80");
    return c_.quad_degree;
  }

  std::shared_ptr<MeasureContext> context(int q) {
    if (ctx_) return ctx_;
    const QuadratureSpec spec = c_.basis.empty() ? QuadratureSpec::minimal(q) : basis_spec();
    if (!c_.cache.empty() && std::filesystem::exists(c_.cache)) {
      ctx_ = load_moment_cache(c_.cache, spec.max_degree);
      if (!(ctx_->spec() == spec)) invalid("moment cache node counts differ from the grid in use");
    } else {
      ctx_ = std::make_shared<MeasureContext>(spec);
    }
    return ctx_;
  }

  const GradedBasis& basis(int N, int q) {
    if (basis_) return *basis_;
    auto ctx = context(q);
    if (!c_.basis.empty()) {
      basis_ = parse_basis(basis_text_, ctx);
      if (basis_->max_degree() < N)
        throw Error(ErrorCode::DegreeExceedsSpec, "basis file has degrees 1.." + std::to_string(basis_->max_degree()) +
                                                      ", need 1.." + std::to_string(N));
    } else {
      basis_ = build_ladder_basis(N, ctx);
    }
    return *basis_;
  }

  // Called before any quadrature when --basis is given, so that validation
  // errors surface first.
  void preload_basis_header() {
    if (c_.basis.empty()) return;
    basis_text_ = read_text_file(c_.basis);
    const json doc = [&] {
      try {
        return json::parse(basis_text_);
      } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string("basis file: ") + e.what());
      }
    }();
    try {
      const json& m = doc.at("measure");
      basis_spec_ = QuadratureSpec{m.at("max_degree").get<int>(), m.at("nodes_psi").get<int>(),
                                   m.at("nodes_chi").get<int>(), m.at("nodes_t").get<int>()};
      basis_degree_ = doc.at("max_degree").get<int>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Parse, std::string("basis file: ") + e.what());
    }
    basis_spec_.validate();
  }

  int basis_degree() const { return basis_degree_; }
  const QuadratureSpec& basis_spec() const { return basis_spec_; }

  void save_cache() const {
    if (!c_.cache.empty() && ctx_) save_moment_cache(*ctx_, c_.cache);
  }

 private:
  const Common& c_;
  std::shared_ptr<MeasureContext> ctx_;
  std::optional<GradedBasis> basis_;
  std::string basis_text_;
  QuadratureSpec basis_spec_;
  int basis_degree_ = 0;
};

// Validates window degree needs against a --basis file before any work.
void check_basis_degree(const Session& s, const Common& c, int need) {
  if (!c.basis.empty() && s.basis_degree() < need)
    throw Error(ErrorCode::DegreeExceedsSpec, "basis file has degrees 1.." + std::to_string(s.basis_degree()) +
                                                  ", need 1.." + std::to_string(need));
}

double tol_or(const Common& c, double fallback) {
  const double t = c.tol.value_or(fallback);
  if (!(t > 0.0)) invalid("--tol must be positive");
  return t;
}

SymbolExpr symbol_arg(const Options& o) {
  if (o.symbol.empty()) invalid("--symbol is required");
  return parse_symbol(o.symbol);
}

// ---------------------------------------------------------------------------

json run_moments(const Options& o, Session& s) {
  const Common& c = o.c;
  s.require_max_degree(0);
  const double tol = tol_or(c, 1e-9);
  const int q = s.quad_degree(c.max_degree);
  auto ctx = s.context(q);
  const std::uint64_t before = ctx->quadrature_evaluations();

  const int half = c.max_degree / 2;
  double conj_sym = 0.0, swap_sym = 0.0;
  std::size_t count = 0;
  for (int d = 1; d <= half; ++d) {
    const auto mons = monomials_of_degree(d);
    const Eigen::MatrixXcd& g = ctx->degree_gram(d);
    for (std::size_t i = 0; i < mons.size(); ++i)
      for (std::size_t j = 0; j < mons.size(); ++j) {
        if (weight(mons[i]) != weight(mons[j])) continue;
        ++count;
        const cd v = g(i, j);
        conj_sym = std::max(conj_sym, std::abs(v - std::conj(g(j, i))));
        const cd sw = g(monomial_position(mons[i].swapped()), monomial_position(mons[j].swapped()));
        swap_sym = std::max(swap_sym, std::abs(v - sw));
      }
  }
  // Weight-violating pairs of equal degree, integrated by quadrature.
  double selection = 0.0;
  int zeros = 0;
  if (half >= 1) {
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<int> deg(1, half);
    for (int tries = 0; zeros < 50 && tries < 100000; ++tries) {
      const int d = deg(rng);
      const auto mons = monomials_of_degree(d);
      std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
      const MultiIndex a = mons[pick(rng)], b = mons[pick(rng)];
      if (weight(a) == weight(b)) continue;
      selection = std::max(selection, std::abs(ctx->moment(a, b)));
      ++zeros;
    }
  }
  json res{{"mass_error", std::abs(ctx->moment({0, 0, 0}, {0, 0, 0}) - 1.0)},
           {"conjugate_symmetry", conj_sym},
           {"swap_symmetry", swap_sym},
           {"selection_zero_max", selection}};
  bool pass = res["mass_error"].get<double>() <= tol && conj_sym <= tol && swap_sym <= tol && selection <= tol;
  if (c.max_degree >= 4) {
    const HoloPolynomial phi3 = HoloPolynomial::phi3();
    const double e = std::abs(ctx->inner_product(phi3, phi3) - 1.0);
    res["phi3_norm_error"] = e;
    pass = pass && e <= tol;
  }
  json r{{"N", c.max_degree}, {"tol", tol}, {"residuals", res}, {"pass", pass}};
  r["moments"] = {{"nonzero_weight_pairs", count},
                  {"selection_pairs_tested", zeros},
                  {"quadrature_evaluations", ctx->quadrature_evaluations() - before}};
  if (q >= 2) r["moments"]["moment_z3_z3"] = complex_json(ctx->moment({0, 0, 1}, {0, 0, 1}));
  r["measure"] = measure_json(*ctx);
  return r;
}

json run_basis(const Options& o, Session& s) {
  const Common& c = o.c;
  s.require_max_degree(1);
  const double tol = tol_or(c, 1e-9);
  if (!c.basis.empty()) invalid("basis builds a basis; use --basis-out to write it");
  const int q = s.quad_degree(2 * c.max_degree);
  const GradedBasis& b = s.basis(c.max_degree, q);
  double defect = 0.0;
  bool links = true;
  json per = json::array();
  for (int n = 1; n <= c.max_degree; ++n) {
    const double d = orthonormality_defect(b, n);
    defect = std::max(defect, d);
    const bool l = ladder_links_exact(b, n);
    links = links && l;
    per.push_back({{"n", n}, {"dim", b.dim(n)}, {"ladder_from_prev", b.block(n).ladder_from_prev},
                   {"gram_defect", d}, {"links_exact", l}});
  }
  if (!o.basis_out.empty()) save_basis(b, o.basis_out);
  json r{{"N", c.max_degree},
         {"tol", tol},
         {"residuals", {{"gram_defect", defect}, {"ladder_links_exact", links}}},
         {"pass", defect <= tol && links}};
  r["degrees"] = per;
  r["basis_id"] = b.id();
  if (!o.basis_out.empty()) r["basis_out"] = o.basis_out;
  r["measure"] = measure_json(b.context());
  return r;
}

json run_relations(const Options& o, Session& s) {
  const Common& c = o.c;
  s.require_max_degree(1);
  const double tol = tol_or(c, 1e-9);
  check_basis_degree(s, c, c.max_degree);
  const int q = s.quad_degree(2 * (c.max_degree + 2));
  const GradedBasis& b = s.basis(c.max_degree, q);
  const RelationReport rep = check_tuple_relations(b, c.max_degree, tol);
  json r{{"N", rep.N},
         {"tol", rep.tol},
         {"residuals", {{"residual1", rep.residual1}, {"residual2", rep.residual2}, {"residual3", rep.residual3}}},
         {"pass", rep.pass}};
  r["measure"] = measure_json(b.context());
  return r;
}

json run_bh_check(const Options& o, Session& s) {
  const Common& c = o.c;
  s.require_max_degree(1);
  const double tol = tol_or(c, 1e-8);
  const int N = c.max_degree;
  if (o.symbol.empty() == o.matrix.empty()) invalid("exactly one of --symbol and --matrix is required");
  std::optional<SymbolExpr> sym;
  int need = 2 * (N + 2);
  if (!o.symbol.empty()) {
    sym = parse_symbol(o.symbol);
    need = std::max(need, required_quadrature_degree(*sym, N + 2));
  }
  check_basis_degree(s, c, N + 2);
  const int q = s.quad_degree(need);
  std::string matrix_text;
  if (!o.matrix.empty()) matrix_text = read_text_file(o.matrix);
  const GradedBasis& b = s.basis(N + 2, q);
  const OperatorWindow A = sym ? toeplitz_window(*sym, b, N + 2) : parse_window(matrix_text, b);
  if (!o.window_out.empty()) write_text_file(o.window_out, format_window(A));
  const BhResidual res = brown_halmos_residual(A, b, N);
  json r{{"N", N}, {"tol", tol}, {"residuals", {{"r1", res.r1}, {"r2", res.r2}, {"r3", res.r3}}},
         {"pass", res.max() <= tol}};
  if (sym) r["symbol"] = sym->to_string();
  if (!o.matrix.empty()) r["matrix_file"] = o.matrix;
  r["window"] = {{"rows", {A.rows.lo, A.rows.hi}}, {"cols", {A.cols.lo, A.cols.hi}}};
  r["measure"] = measure_json(b.context());
  return r;
}

json run_ladder(const Options& o, Session& s) {
  const Common& c = o.c;
  s.require_max_degree(1);
  const double tol = tol_or(c, 1e-9);
  const int N = c.max_degree;
  if (o.r < 0) invalid("--r must be >= 0");
  if (1 + 2 * o.r > N) invalid("--r " + std::to_string(o.r) + " needs --max-degree >= " + std::to_string(1 + 2 * o.r));
  const SymbolExpr sym = symbol_arg(o);
  check_basis_degree(s, c, N);
  const int q = s.quad_degree(required_quadrature_degree(sym, N));
  const GradedBasis& b = s.basis(N, q);
  const OperatorWindow W = toeplitz_window(sym, b, N);
  json res = json::object();
  double worst = 0.0;
  for (int r = 0; r <= o.r; ++r) {
    const double d = ladder_shift_check(W, b, N, r);
    res["shift_r" + std::to_string(r)] = d;
    worst = std::max(worst, d);
  }
  json r{{"N", N}, {"tol", tol}, {"residuals", res}, {"pass", worst <= tol}};
  r["symbol"] = sym.to_string();
  r["r"] = o.r;
  r["measure"] = measure_json(b.context());
  return r;
}

json run_probe(const Options& o, Session& s) {
  const Common& c = o.c;
  s.require_max_degree(1);
  const double tol = tol_or(c, 1e-9);
  const int N = c.max_degree;
  if (o.r_max < 0) invalid("--r-max must be >= 0");
  if (1 + 2 * o.r_max > N)
    invalid("--r-max " + std::to_string(o.r_max) + " needs --max-degree >= " + std::to_string(1 + 2 * o.r_max));
  const SymbolExpr sym = symbol_arg(o);
  check_basis_degree(s, c, N);
  const int q = s.quad_degree(required_quadrature_degree(sym, N));
  const GradedBasis& b = s.basis(N, q);
  const std::vector<double> profile = compactness_probe(toeplitz_window(sym, b, N), b, N, o.r_max);
  const double lo = *std::min_element(profile.begin(), profile.end());
  const double hi = *std::max_element(profile.begin(), profile.end());
  // A zero symbol must give a zero profile; otherwise the entries must not decay.
  const bool pass = sym.is_zero() ? hi <= tol : (profile[0] > tol && lo >= 0.1 * profile[0]);
  if (!o.csv.empty()) write_text_file(o.csv, format_decay_csv(profile));
  json r{{"N", N},
         {"tol", tol},
         {"residuals", {{"profile_r0", profile[0]}, {"profile_min", lo}, {"profile_max", hi}}},
         {"pass", pass}};
  r["symbol"] = sym.to_string();
  r["profile"] = profile;
  r["r_max"] = o.r_max;
  if (!o.csv.empty()) r["csv"] = o.csv;
  r["measure"] = measure_json(b.context());
  return r;
}

json run_recover(const Options& o, Session& s) {
  const Common& c = o.c;
  s.require_max_degree(1);
  const double tol = tol_or(c, 1e-6);
  const int N = c.max_degree;
  if (o.dict_degree < 0 || o.dict_degree > 8) invalid("--dict-degree must be in [0, 8]");
  if (o.symbol.empty() == o.matrix.empty()) invalid("exactly one of --symbol and --matrix is required");
  std::optional<SymbolExpr> sym;
  int need = 2 * (N + o.dict_degree);
  if (!o.symbol.empty()) {
    sym = parse_symbol(o.symbol);
    need = std::max(need, required_quadrature_degree(*sym, N + 2));
  }
  check_basis_degree(s, c, N + 2);
  const int q = s.quad_degree(need);
  std::string matrix_text;
  if (!o.matrix.empty()) matrix_text = read_text_file(o.matrix);
  const GradedBasis& b = s.basis(N + 2, q);
  const OperatorWindow A = sym ? toeplitz_window(*sym, b, N + 2) : parse_window(matrix_text, b);
  const RecoveryResult rec = symbol_recovery(A, b, N, o.dict_degree);
  json coeffs = json::array();
  for (const auto& t : rec.symbol.terms())
    coeffs.push_back({{"a", t.a}, {"b", t.b}, {"k", t.k}, {"coeff", complex_json(t.coeff)}});
  json r{{"N", N}, {"tol", tol}, {"residuals", {{"relative_residual", rec.residual}}}, {"pass", rec.residual <= tol}};
  if (sym) r["symbol"] = sym->to_string();
  if (!o.matrix.empty()) r["matrix_file"] = o.matrix;
  r["recovered"] = rec.symbol.to_string();
  r["coefficients"] = coeffs;
  r["dict_degree"] = o.dict_degree;
  r["dictionary_size"] = rec.coefficients.size();
  r["measure"] = measure_json(b.context());
  return r;
}

json run_coe_sample(const Options& o, Session& s) {
  const Common& c = o.c;
  const int D = c.max_degree < 0 ? 8 : c.max_degree;
  if (D > 12) invalid("--max-degree must be <= 12 for coe-sample");
  if (o.samples < 2 || o.samples > 50000000) invalid("--samples must be in [2, 5e7]");
  const double tol = tol_or(c, 4.0);
  const int q = s.quad_degree(std::max(2, D));
  auto ctx = s.context(q);
  const auto pts = sample_boundary_R(o.samples, c.seed);
  double unitary = 0.0, det = 0.0;
  for (const auto& w : pts) {
    unitary = std::max(unitary, w.unitarity_defect());
    det = std::max(det, std::abs(std::abs(w.det()) - 1.0));
  }
  const auto checks = compare_with_samples(*ctx, D, pts);
  double worst = 0.0;
  json worst_pair;
  for (const auto& m : checks)
    if (m.deviation_in_se() > worst) {
      worst = m.deviation_in_se();
      worst_pair = {{"alpha", {m.alpha.a1, m.alpha.a2, m.alpha.a3}}, {"beta", {m.beta.a1, m.beta.a2, m.beta.a3}}};
    }
  McAccumulator c_acc;
  for (const auto& w : pts) c_acc.add(4.0 * std::norm(w.w12));
  const McEstimate ce = c_acc.estimate();
  const double c_dev = std::abs(ce.mean.real() - ctx->normalization_C()) / ce.standard_error;
  json r{{"N", D},
         {"tol", tol},
         {"residuals",
          {{"max_deviation_se", worst}, {"C_deviation_se", c_dev}, {"unitarity_defect", unitary}, {"det_defect", det}}},
         {"pass", worst <= tol && c_dev <= tol && unitary <= 1e-12 && det <= 1e-12}};
  r["samples"] = o.samples;
  r["seed"] = c.seed;
  r["pairs"] = checks.size();
  r["worst_pair"] = worst_pair;
  r["C_mc"] = {{"mean", ce.mean.real()}, {"standard_error", ce.standard_error}};
  r["measure"] = measure_json(*ctx);
  return r;
}

void add_common(CLI::App* sub, Common& c, bool needs_degree) {
  auto* md = sub->add_option("--max-degree", c.max_degree, "Window / truncation degree N (moments: combined degree)");
  if (needs_degree) md->required();
  sub->add_option("--quad-degree", c.quad_degree, "Quadrature max_degree (default: the smallest sufficient)");
  sub->add_option("--tol", c.tol, "Pass tolerance");
  sub->add_option("--out", c.out, "Report JSON path (default: stdout)");
  sub->add_option("--cache", c.cache, "Moment cache CSV, loaded if present and written back");
  sub->add_option("--basis", c.basis, "Basis JSON to use instead of building one");
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_flag("--timing", c.timing, "Record wall time in the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tetralab: Toeplitz operators on the tetrablock Hardy space, checked at finite truncation"};
  app.require_subcommand(1);
  Options o;

  auto* moments = app.add_subcommand("moments", "Integrate and cache boundary moments; run measure identities");
  add_common(moments, o.c, true);

  auto* basis = app.add_subcommand("basis", "Build the phi3-ladder orthonormal basis");
  add_common(basis, o.c, true);
  basis->add_option("--basis-out", o.basis_out, "Write the basis JSON here");

  auto* relations = app.add_subcommand("relations", "Check the coordinate tuple relations");
  add_common(relations, o.c, true);

  auto* bh = app.add_subcommand("bh-check", "Brown-Halmos residuals of a symbol's window or a matrix window");
  add_common(bh, o.c, true);
  bh->add_option("--symbol", o.symbol, "Symbol, e.g. \"~z2*z3 + (0.5+0i)*z2^2\"");
  bh->add_option("--matrix", o.matrix, "Window JSON covering degrees 1..N+2");
  bh->add_option("--window-out", o.window_out, "Write the tested window JSON here");

  auto* ladder = app.add_subcommand("ladder", "Ladder-shift invariance of a Toeplitz window");
  add_common(ladder, o.c, true);
  ladder->add_option("--symbol", o.symbol, "Symbol")->required();
  ladder->add_option("--r", o.r, "Largest shift r (all 0..r are checked)");

  auto* probe = app.add_subcommand("probe", "Decay profile of window entries along the ladder");
  add_common(probe, o.c, true);
  probe->add_option("--symbol", o.symbol, "Symbol")->required();
  probe->add_option("--r-max", o.r_max, "Largest shift");
  probe->add_option("--csv", o.csv, "Write the profile as CSV r,max_abs_entry");

  auto* recover = app.add_subcommand("recover", "Recover a symbol from a window by least squares");
  add_common(recover, o.c, true);
  recover->add_option("--symbol", o.symbol, "Symbol whose window is recovered");
  recover->add_option("--matrix", o.matrix, "Window JSON covering degrees 1..N+2");
  recover->add_option("--dict-degree", o.dict_degree, "Dictionary bound on a+b and |k|");

  auto* coe = app.add_subcommand("coe-sample", "Sample the boundary measure and compare with quadrature");
  add_common(coe, o.c, false);
  coe->add_option("--samples", o.samples, "Number of samples");

  std::vector<std::string> echo;
  for (int i = 1; i < argc; ++i) echo.emplace_back(argv[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  json report{{"schema", kSchema}, {"check", name}, {"command", echo}};
  int status = 0;
  const auto t0 = std::chrono::steady_clock::now();
  Session session(o.c);
  try {
    session.preload_basis_header();
    json r;
    if (name == "moments") r = run_moments(o, session);
    else if (name == "basis") r = run_basis(o, session);
    else if (name == "relations") r = run_relations(o, session);
    else if (name == "bh-check") r = run_bh_check(o, session);
    else if (name == "ladder") r = run_ladder(o, session);
    else if (name == "probe") r = run_probe(o, session);
    else if (name == "recover") r = run_recover(o, session);
    else r = run_coe_sample(o, session);
    report.update(r);
    report["basis_file"] = o.c.basis.empty() ? json(nullptr) : json(o.c.basis);
    session.save_cache();
    status = report["pass"].get<bool>() ? 0 : 1;
  } catch (const Error& e) {
    report["pass"] = false;
    report["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    status = exit_code_for(e.code());
  } catch (const std::exception& e) {
    report["pass"] = false;
    report["error"] = {{"code", "internal"}, {"message", e.what()}};
    status = 1;
  }
  if (o.c.timing)
    report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string text = report.dump(2) + "\n";
  try {
    if (o.c.out.empty())
      std::cout << text;
    else
      write_text_file(o.c.out, text);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (report.contains("error")) std::cerr << "error: " << report["error"]["message"].get<std::string>() << "\n";
  return status;
}
