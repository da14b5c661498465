#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tetralab/error.hpp"
#include "tetralab/io.hpp"
#include "tetralab/parallel.hpp"
#include "tetralab/toeplitz_lab.hpp"

namespace py = pybind11;
using namespace tetralab;

namespace {

MultiIndex to_index(const std::array<int, 3>& a) { return {a[0], a[1], a[2]}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Toeplitz operators on the tetrablock Hardy space at finite truncation";

  static py::exception<Error> exc(m, "TetralabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("set_thread_count", &set_thread_count, py::arg("n"));
  m.def("thread_count", &thread_count);

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def_static("minimal", &QuadratureSpec::minimal, py::arg("max_degree"))
      .def_readonly("max_degree", &QuadratureSpec::max_degree)
      .def_readonly("nodes_psi", &QuadratureSpec::nodes_psi)
      .def_readonly("nodes_chi", &QuadratureSpec::nodes_chi)
      .def_readonly("nodes_t", &QuadratureSpec::nodes_t);

  py::class_<MeasureContext, std::shared_ptr<MeasureContext>>(m, "MeasureContext")
      .def(py::init([](int max_degree) { return std::make_shared<MeasureContext>(QuadratureSpec::minimal(max_degree)); }),
           py::arg("max_degree"))
      .def_property_readonly("spec", &MeasureContext::spec)
      .def(
          "moment",
          [](const MeasureContext& c, std::array<int, 3> a, std::array<int, 3> b) {
            return c.moment(to_index(a), to_index(b));
          },
          py::arg("alpha"), py::arg("beta"))
      .def(
          "moment_E",
          [](const MeasureContext& c, std::array<int, 3> a, std::array<int, 3> b) {
            return moment_E(to_index(a), to_index(b), c);
          },
          py::arg("alpha"), py::arg("beta"))
      .def("normalization_C", &MeasureContext::normalization_C)
      .def("quadrature_evaluations", &MeasureContext::quadrature_evaluations)
      .def("save_cache", [](const MeasureContext& c, const std::string& path) { save_moment_cache(c, path); });

  m.def("load_cache", &load_moment_cache, py::arg("path"), py::arg("expected_max_degree") = -1);

  m.def(
      "sample_boundary",
      [](int count, std::uint64_t seed) {
        Eigen::MatrixXcd out(count, 3);
        const auto pts = sample_boundary_R(count, seed);
        for (int i = 0; i < count; ++i) {
          out(i, 0) = pts[static_cast<std::size_t>(i)].w11;
          out(i, 1) = pts[static_cast<std::size_t>(i)].w22;
          out(i, 2) = pts[static_cast<std::size_t>(i)].w12;
        }
        return out;
      },
      py::arg("count"), py::arg("seed"), "Rows (w11, w22, w12) of W = U U^T for Haar U");

  m.def("dim_hom_minus", &dim_hom_minus, py::arg("n"));
  m.def(
      "enumerate_hom_minus",
      [](int n) {
        std::vector<std::array<int, 3>> out;
        for (const auto& mi : enumerate_hom_minus(n)) out.push_back({mi.a1, mi.a2, mi.a3});
        return out;
      },
      py::arg("n"));

  py::class_<GradedBasis>(m, "GradedBasis")
      .def_property_readonly("max_degree", &GradedBasis::max_degree)
      .def_property_readonly("id", &GradedBasis::id)
      .def("dim", &GradedBasis::dim, py::arg("n"))
      .def("vectors", [](const GradedBasis& b, int n) { return b.block(n).vectors; }, py::arg("n"))
      .def("orthonormality_defect", [](const GradedBasis& b, int n) { return orthonormality_defect(b, n); })
      .def("save", [](const GradedBasis& b, const std::string& path) { save_basis(b, path); });

  m.def("build_ladder_basis", &build_ladder_basis, py::arg("N"), py::arg("ctx"));

  py::class_<SymbolExpr>(m, "Symbol")
      .def(py::init([](const std::string& text) { return parse_symbol(text); }), py::arg("text"))
      .def("terms",
           [](const SymbolExpr& s) {
             std::vector<std::tuple<cd, int, int, int>> out;
             for (const auto& t : s.terms()) out.emplace_back(t.coeff, t.a, t.b, t.k);
             return out;
           })
      .def("conj", &SymbolExpr::conj)
      .def("evaluate", &SymbolExpr::evaluate, py::arg("z2"), py::arg("z3"))
      .def("__str__", &SymbolExpr::to_string)
      .def("__repr__", [](const SymbolExpr& s) { return "Symbol('" + s.to_string() + "')"; });

  m.def(
      "toeplitz_window", [](const SymbolExpr& s, const GradedBasis& b, int N) { return toeplitz_window(s, b, N).matrix; },
      py::arg("symbol"), py::arg("basis"), py::arg("N"), "Matrix <u e_j, e_i> over degrees 1..N");

  m.def(
      "check_tuple_relations",
      [](const GradedBasis& b, int N, double tol) {
        const RelationReport r = check_tuple_relations(b, N, tol);
        return py::dict(py::arg("residual1") = r.residual1, py::arg("residual2") = r.residual2,
                        py::arg("residual3") = r.residual3, py::arg("pass") = r.pass);
      },
      py::arg("basis"), py::arg("N"), py::arg("tol") = 1e-9);

  m.def(
      "brown_halmos_residual",
      [](const Eigen::MatrixXcd& a, const GradedBasis& b, int N) {
        OperatorWindow w = empty_window(b, {1, N + 2}, {1, N + 2});
        if (a.rows() != w.matrix.rows() || a.cols() != w.matrix.cols())
          throw Error(ErrorCode::WindowTooSmall, "matrix must be " + std::to_string(w.matrix.rows()) + " x " +
                                                     std::to_string(w.matrix.cols()) + " (degrees 1.." +
                                                     std::to_string(N + 2) + ")");
        w.matrix = a;
        const BhResidual r = brown_halmos_residual(w, b, N);
        return std::make_tuple(r.r1, r.r2, r.r3);
      },
      py::arg("matrix"), py::arg("basis"), py::arg("N"), "Window must cover degrees 1..N+2");

  m.def(
      "symbol_recovery",
      [](const Eigen::MatrixXcd& a, const GradedBasis& b, int N, int dict_degree) {
        OperatorWindow w = empty_window(b, {1, N + 2}, {1, N + 2});
        if (a.rows() != w.matrix.rows() || a.cols() != w.matrix.cols())
          throw Error(ErrorCode::WindowTooSmall, "matrix must cover degrees 1.." + std::to_string(N + 2));
        w.matrix = a;
        const RecoveryResult r = symbol_recovery(w, b, N, dict_degree);
        return std::make_tuple(r.symbol, r.residual);
      },
      py::arg("matrix"), py::arg("basis"), py::arg("N"), py::arg("dict_degree") = 3);

  m.def("ladder_shift_check", py::overload_cast<const SymbolExpr&, const GradedBasis&, int, int>(&ladder_shift_check),
        py::arg("symbol"), py::arg("basis"), py::arg("N"), py::arg("r"));
  m.def("compactness_probe",
        py::overload_cast<const SymbolExpr&, const GradedBasis&, int, int>(&compactness_probe), py::arg("symbol"),
        py::arg("basis"), py::arg("N"), py::arg("r_max"));
}
