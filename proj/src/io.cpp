#include "tetralab/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "tetralab/error.hpp"

namespace tetralab {

using nlohmann::json;

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void parse_fail(const std::string& what, std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::Parse, what + ": line " + std::to_string(line) + ": " + msg);
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && first != last;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

json measure_json(const QuadratureSpec& spec, double C) {
  return json{{"max_degree", spec.max_degree},
              {"nodes_psi", spec.nodes_psi},
              {"nodes_chi", spec.nodes_chi},
              {"nodes_t", spec.nodes_t},
              {"C", C}};
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

// ---------------------------------------------------------------------------
// Moment cache

std::string format_moment_cache(const MeasureContext& ctx) {
  const QuadratureSpec& s = ctx.spec();
  std::string out = "# max_degree=" + std::to_string(s.max_degree) + " nodes_psi=" + std::to_string(s.nodes_psi) +
                    " nodes_chi=" + std::to_string(s.nodes_chi) + " nodes_t=" + std::to_string(s.nodes_t) + "\n";
  out += "a1,a2,a3,b1,b2,b3,re,im\n";
  for (const auto& [k, v] : ctx.cache_snapshot()) {
    out += std::to_string(k.alpha.a1) + "," + std::to_string(k.alpha.a2) + "," + std::to_string(k.alpha.a3) + "," +
           std::to_string(k.beta.a1) + "," + std::to_string(k.beta.a2) + "," + std::to_string(k.beta.a3) + "," +
           g17(v.real()) + "," + g17(v.imag()) + "\n";
  }
  return out;
}

void save_moment_cache(const MeasureContext& ctx, const std::string& path) {
  write_text_file(path, format_moment_cache(ctx));
}

std::shared_ptr<MeasureContext> parse_moment_cache(const std::string& text, int expected_max_degree) {
  const char* what = "moment cache";
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) parse_fail(what, 1, "empty file");

  QuadratureSpec spec;
  {
    const std::string_view head = lines[0];
    if (head.substr(0, 2) != "# ") parse_fail(what, 1, "expected '# max_degree=... nodes_psi=... ...' header");
    const auto fields = split(head.substr(2), ' ');
    const char* names[4] = {"max_degree", "nodes_psi", "nodes_chi", "nodes_t"};
    int* slots[4] = {&spec.max_degree, &spec.nodes_psi, &spec.nodes_chi, &spec.nodes_t};
    if (fields.size() != 4) parse_fail(what, 1, "header must have 4 key=value fields");
    for (int i = 0; i < 4; ++i) {
      const std::string prefix = std::string(names[i]) + "=";
      if (fields[i].substr(0, prefix.size()) != prefix || !parse_number(fields[i].substr(prefix.size()), *slots[i]))
        parse_fail(what, 1, "bad header field '" + std::string(fields[i]) + "', expected " + prefix + "<int>");
    }
    try {
      spec.validate();
    } catch (const Error& e) {
      parse_fail(what, 1, e.what());
    }
  }
  if (expected_max_degree >= 0 && spec.max_degree != expected_max_degree)
    throw Error(ErrorCode::Validation, "moment cache: file has max_degree=" + std::to_string(spec.max_degree) +
                                           ", expected " + std::to_string(expected_max_degree));
  if (lines.size() < 2 || lines[1] != "a1,a2,a3,b1,b2,b3,re,im")
    parse_fail(what, 2, "expected column header 'a1,a2,a3,b1,b2,b3,re,im'");

  auto ctx = std::make_shared<MeasureContext>(spec);
  MomentKey prev{};
  for (std::size_t ln = 2; ln < lines.size(); ++ln) {
    const auto f = split(lines[ln], ',');
    if (f.size() != 8) parse_fail(what, ln + 1, "expected 8 comma-separated fields, got " + std::to_string(f.size()));
    int e[6];
    for (int i = 0; i < 6; ++i)
      if (!parse_number(f[i], e[i]) || e[i] < 0) parse_fail(what, ln + 1, "bad exponent '" + std::string(f[i]) + "'");
    double re = 0.0, im = 0.0;
    if (!parse_number(f[6], re) || !parse_number(f[7], im)) parse_fail(what, ln + 1, "bad moment value");
    const MultiIndex a{e[0], e[1], e[2]}, b{e[3], e[4], e[5]};
    if (a.degree() != b.degree() || a.degree() == 0)
      parse_fail(what, ln + 1, "row must pair two exponents of the same positive degree");
    if (a.degree() + b.degree() > spec.max_degree)
      parse_fail(what, ln + 1, "combined degree exceeds max_degree " + std::to_string(spec.max_degree));
    bool conj = false;
    const MomentKey key{a, b};
    if (!(canonical_key(a, b, conj) == key)) parse_fail(what, ln + 1, "key is not in canonical form");
    if (ln > 2 && !(prev < key)) parse_fail(what, ln + 1, "rows are not strictly sorted");
    prev = key;
    ctx->insert_cached(key, {re, im});
  }
  return ctx;
}

std::shared_ptr<MeasureContext> load_moment_cache(const std::string& path, int expected_max_degree) {
  return parse_moment_cache(read_text_file(path), expected_max_degree);
}

// ---------------------------------------------------------------------------
// Basis

std::string format_basis(const GradedBasis& basis) {
  json degrees = json::array();
  for (int n = 1; n <= basis.max_degree(); ++n) {
    const DegreeBlock& b = basis.block(n);
    json mons = json::array();
    for (const auto& m : b.monomials) mons.push_back({m.a1, m.a2, m.a3});
    json vecs = json::array();
    for (Eigen::Index i = 0; i < b.vectors.cols(); ++i) {
      json v = json::array();
      for (Eigen::Index k = 0; k < b.vectors.rows(); ++k) v.push_back({b.vectors(k, i).real(), b.vectors(k, i).imag()});
      vecs.push_back(std::move(v));
    }
    degrees.push_back({{"n", n}, {"monomials", mons}, {"vectors", vecs}, {"ladder_from_prev", b.ladder_from_prev}});
  }
  const json doc{{"max_degree", basis.max_degree()},
                 {"measure", measure_json(basis.measure().spec, basis.measure().C)},
                 {"degrees", degrees}};
  return doc.dump(1) + "\n";
}

void save_basis(const GradedBasis& basis, const std::string& path) { write_text_file(path, format_basis(basis)); }

GradedBasis parse_basis(const std::string& text, std::shared_ptr<const MeasureContext> ctx) {
  const json doc = parse_json(text, "basis file");
  try {
    MeasureInfo info;
    const json& m = doc.at("measure");
    info.spec.max_degree = m.at("max_degree").get<int>();
    info.spec.nodes_psi = m.at("nodes_psi").get<int>();
    info.spec.nodes_chi = m.at("nodes_chi").get<int>();
    info.spec.nodes_t = m.at("nodes_t").get<int>();
    info.C = m.at("C").get<double>();
    if (ctx && !(ctx->spec() == info.spec))
      throw Error(ErrorCode::Validation, "basis file: quadrature spec differs from the supplied moment context");
    const int N = doc.at("max_degree").get<int>();
    const json& degrees = doc.at("degrees");
    if (N < 1 || degrees.size() != static_cast<std::size_t>(N))
      throw Error(ErrorCode::Validation, "basis file: degrees array does not match max_degree");
    std::vector<DegreeBlock> blocks;
    for (int n = 1; n <= N; ++n) {
      const json& d = degrees.at(static_cast<std::size_t>(n - 1));
      DegreeBlock b;
      b.n = d.at("n").get<int>();
      if (b.n != n) throw Error(ErrorCode::Validation, "basis file: degrees out of order");
      for (const auto& mon : d.at("monomials")) b.monomials.push_back({mon.at(0), mon.at(1), mon.at(2)});
      if (b.monomials != enumerate_hom_minus(n))
        throw Error(ErrorCode::Validation, "basis file: degree " + std::to_string(n) + " monomial list is not canonical");
      const json& vecs = d.at("vectors");
      if (vecs.size() != static_cast<std::size_t>(dim_hom_minus(n)))
        throw Error(ErrorCode::Validation, "basis file: degree " + std::to_string(n) + " has the wrong vector count");
      const auto rows = static_cast<Eigen::Index>(b.monomials.size());
      b.vectors.resize(rows, static_cast<Eigen::Index>(vecs.size()));
      for (std::size_t i = 0; i < vecs.size(); ++i) {
        if (vecs[i].size() != b.monomials.size())
          throw Error(ErrorCode::Validation, "basis file: vector length mismatch at degree " + std::to_string(n));
        for (std::size_t k = 0; k < vecs[i].size(); ++k)
          b.vectors(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = {vecs[i][k].at(0).get<double>(),
                                                                                 vecs[i][k].at(1).get<double>()};
      }
      b.ladder_from_prev = d.at("ladder_from_prev").get<int>();
      blocks.push_back(std::move(b));
    }
    return GradedBasis(std::move(blocks), info, std::move(ctx));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("basis file: ") + e.what());
  }
}

GradedBasis load_basis(const std::string& path, std::shared_ptr<const MeasureContext> ctx) {
  return parse_basis(read_text_file(path), std::move(ctx));
}

// ---------------------------------------------------------------------------
// Windows

std::string format_window(const OperatorWindow& w) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < w.matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < w.matrix.cols(); ++j) row.push_back({w.matrix(i, j).real(), w.matrix(i, j).imag()});
    rows.push_back(std::move(row));
  }
  const json doc{{"rows", {w.rows.lo, w.rows.hi}},
                 {"cols", {w.cols.lo, w.cols.hi}},
                 {"basis_id", w.basis_id},
                 {"matrix", rows}};
  return doc.dump(1) + "\n";
}

OperatorWindow parse_window(const std::string& text, const GradedBasis& basis) {
  const json doc = parse_json(text, "window file");
  try {
    const DegreeRange r{doc.at("rows").at(0).get<int>(), doc.at("rows").at(1).get<int>()};
    const DegreeRange c{doc.at("cols").at(0).get<int>(), doc.at("cols").at(1).get<int>()};
    OperatorWindow w = empty_window(basis, r, c);
    if (doc.contains("basis_id")) w.basis_id = doc.at("basis_id").get<std::string>();
    const json& m = doc.at("matrix");
    if (m.size() != static_cast<std::size_t>(w.matrix.rows()))
      throw Error(ErrorCode::Validation, "window file: expected " + std::to_string(w.matrix.rows()) +
                                             " rows for degrees [" + std::to_string(r.lo) + ", " +
                                             std::to_string(r.hi) + "], got " + std::to_string(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i].size() != static_cast<std::size_t>(w.matrix.cols()))
        throw Error(ErrorCode::Validation, "window file: row " + std::to_string(i) + " has " +
                                               std::to_string(m[i].size()) + " entries, expected " +
                                               std::to_string(w.matrix.cols()));
      for (std::size_t j = 0; j < m[i].size(); ++j)
        w.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {m[i][j].at(0).get<double>(),
                                                                              m[i][j].at(1).get<double>()};
    }
    return w;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("window file: ") + e.what());
  }
}

OperatorWindow load_window(const std::string& path, const GradedBasis& basis) {
  return parse_window(read_text_file(path), basis);
}

std::string format_decay_csv(const std::vector<double>& profile) {
  std::string out = "r,max_abs_entry\n";
  for (std::size_t r = 0; r < profile.size(); ++r) out += std::to_string(r) + "," + g17(profile[r]) + "\n";
  return out;
}

}  // namespace tetralab
