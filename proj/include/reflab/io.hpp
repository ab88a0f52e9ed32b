#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "reflab/affine.hpp"
#include "reflab/orders.hpp"
#include "reflab/root_slice.hpp"

namespace reflab {

struct MatrixFile {
  CoxeterMatrix matrix;
  /// Requested mode, when the file names one.
  std::optional<ScalarMode> mode;
};

/// Matrix files hold { rank, entries, infinity_weights?, mode? }. entries is
/// row-major (flat or as rows) with "inf" for infinite labels;
/// infinity_weights has the same shape, read where the label is infinite.
/// Throws ParseError.
MatrixFile parse_matrix_json(const std::string& text);
/// The same keys as `key = value` lines (a TOML subset: integers, decimals,
/// strings, inf, nested arrays, comments).
MatrixFile parse_matrix_toml(const std::string& text);
/// JSON when the first non-blank character is '{', TOML otherwise. Throws
/// ParseError, including for unreadable files.
MatrixFile load_matrix_file(const std::string& path);

/// id, depth, coeff_1..coeff_n, parent_id, parent_letter (1-based; empty for
/// simple roots).
void write_roots_csv(std::ostream& out, const RootSlice& slice);
/// position, root_id, coeff_1..coeff_n.
void write_order_csv(std::ostream& out, const TruncatedOrder& order);
/// id, x1..xn (normalized coordinates), qvalue_sign.
void write_normroots_csv(std::ostream& out, const RootSlice& slice);
/// beta_id (1-based index into the finite roots, positive ones first), level,
/// coeff_1..coeff_n, for every root of the slice.
void write_loop_csv(std::ostream& out, const AffineModel& model, const RootSlice& slice);

}  // namespace reflab
