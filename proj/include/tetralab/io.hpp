#pragma once

// File formats: moment cache CSV, basis JSON, operator window JSON, decay CSV.

#include <memory>
#include <string>
#include <vector>

#include "tetralab/boundary_measure.hpp"
#include "tetralab/hardy_space.hpp"
#include "tetralab/toeplitz_lab.hpp"

namespace tetralab {

/// Moment cache text:
///   # max_degree=D nodes_psi=P nodes_chi=Q nodes_t=T
///   a1,a2,a3,b1,b2,b3,re,im
///   one row per canonical key, sorted, values as %.17g
std::string format_moment_cache(const MeasureContext& ctx);
void save_moment_cache(const MeasureContext& ctx, const std::string& path);

/// Parses a cache file into a fresh context. Malformed lines raise Parse with
/// the 1-based line number; a header whose max_degree differs from
/// expected_max_degree (when >= 0) raises Validation.
std::shared_ptr<MeasureContext> parse_moment_cache(const std::string& text, int expected_max_degree = -1);
std::shared_ptr<MeasureContext> load_moment_cache(const std::string& path, int expected_max_degree = -1);

/// Basis JSON: {"max_degree", "measure": {"nodes_psi", ..., "C"}, "degrees": [...]}.
std::string format_basis(const GradedBasis& basis);
void save_basis(const GradedBasis& basis, const std::string& path);
/// Rebuilds a basis; ctx (if given) must have the recorded quadrature spec
/// and is attached for later window computations.
GradedBasis parse_basis(const std::string& text, std::shared_ptr<const MeasureContext> ctx = nullptr);
GradedBasis load_basis(const std::string& path, std::shared_ptr<const MeasureContext> ctx = nullptr);

/// Window JSON: {"rows": [lo, hi], "cols": [lo, hi], "basis_id", "matrix":
/// [[[re, im], ...], ...]} (row-major).
std::string format_window(const OperatorWindow& w);
/// Offsets are rebuilt from the basis; matrix dimensions must agree with it.
OperatorWindow parse_window(const std::string& text, const GradedBasis& basis);
OperatorWindow load_window(const std::string& path, const GradedBasis& basis);

/// "r,max_abs_entry" followed by one row per r.
std::string format_decay_csv(const std::vector<double>& profile);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tetralab
