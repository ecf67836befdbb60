#pragma once

#include <utility>
#include <vector>

#include "aapdhg/anderson.hpp"
#include "aapdhg/sparse_linalg.hpp"
#include "aapdhg/vec.hpp"

namespace aapdhg {

using ColumnList = std::vector<Vec>;

struct FilterParams {
  double c_s = 0.2;        // sine threshold in (0, 1]
  double kappa_bar = 1e9;  // conditioning cap
};

// Filtered difference memory with the QR of the residual-difference columns.
struct FilteredMemory {
  ColumnList e;  // iterate differences
  ColumnList f;  // residual differences
  QRFactors qr;  // economy QR of f (column i of q/r matches f[i])

  std::size_t size() const { return f.size(); }
  bool empty() const { return f.empty(); }
};

// Reverses both lists. Throws DimensionError on count mismatch.
std::pair<ColumnList, ColumnList> reverse_columns(ColumnList e, ColumnList f);

// Single pass over the QR diagonal of f: column i is dropped when
// |r_ii| / ||f_i|| < c_s. Column 1 is always kept (zero first column throws
// SingularError). Columns past the row dimension have no diagonal entry and
// are dropped. Drops apply to e and f together.
std::pair<ColumnList, ColumnList> angle_filter(ColumnList e, ColumnList f,
                                               double c_s);

// Closed-form bounds b_j >= ||(R^{-1})_{:,j}||^2 valid once every column of f
// keeps a sine of at least c_s against the span of its predecessors.
Vec length_bounds(const ColumnList& f, double c_s);

// Keeps the longest prefix (k = m down to 1) whose conditioning product
// (sum ||e_j||^2)(sum b_j) stays within kappa_bar^2; may return empty lists.
// Expects the most recent column leftmost.
std::pair<ColumnList, ColumnList> length_filter(ColumnList e, ColumnList f,
                                                double c_s, double kappa_bar);

// Full pipeline: reverse, angle filter, length filter, reverse back, QR.
// Input columns ordered oldest to newest; output preserves that order.
FilteredMemory build_filtered_memory(ColumnList e, ColumnList f,
                                     const FilterParams& params);

// Accelerated candidate u - H g with H = -beta*Dhat + (E + beta*Dhat*F) R^{-1} Q'.
// Applied as w = R^{-1} Q'g, result = u + beta*Dhat*g - sum_j (e_j +
// beta*Dhat*f_j) w_j. Empty memory yields u + beta*Dhat*g. Propagates
// SingularError from the triangular solve.
Vec filtered_aa_apply(const FilteredMemory& fm, const AAParams& params,
                      const Vec& u, const Vec& g);

}  // namespace aapdhg
