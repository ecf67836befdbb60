#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "aapdhg/sparse_linalg.hpp"
#include "aapdhg/vec.hpp"

namespace aapdhg {

// Raw parse of an MPS file. Integrality markers are recorded, then relaxed.
struct RawLP {
  std::string name;
  bool maximize = false;

  std::string objective_name;            // first N row
  std::vector<std::string> row_names;    // constraint rows, file order
  std::vector<char> row_sense;           // 'E', 'G' or 'L', parallel to row_names
  std::vector<std::string> col_names;
  Vec obj_coeffs;                        // per column
  std::vector<Triplet> entries;          // constraint coefficients
  Vec rhs;                               // per constraint row, default 0
  Vec lower, upper;                      // per column, defaults 0 / +inf
  std::vector<bool> is_integer;          // recorded for reporting only

  std::unordered_map<std::string, int> row_index;
  std::unordered_map<std::string, int> col_index;
};

// The LP in four-block form:
//   min c'x  s.t.  Gx >= h,  Ax = b,  l <= x <= u.
struct ProblemData {
  SparseMatrix g;  // m1 x n
  SparseMatrix a;  // m2 x n
  Vec c, h, b;
  Vec l, u;        // entries may be -inf / +inf

  SparseMatrix k;  // [G; A]
  Vec q;           // [h; b]

  // True when the source objective was a maximization; c is already negated,
  // reports flip the sign back.
  bool maximize = false;

  std::string name;
  std::vector<std::string> row_names_g, row_names_a, col_names;

  int n() const { return int(c.size()); }
  int m1() const { return g.nrows; }
  int m2() const { return a.nrows; }
};

enum class LambdaTag { kZero, kNonpos, kNonneg, kFree };
using LambdaSpec = std::vector<LambdaTag>;

RawLP parse_mps(std::istream& in);
RawLP parse_mps_file(const std::string& path);

ProblemData to_standard_form(const RawLP& raw);

// Per-coordinate admissible set for the bound multipliers, determined by the
// finiteness pattern of (l_i, u_i).
LambdaSpec build_lambda_set(const Vec& l, const Vec& u);

// MPS emission of the four-block form (used by round-trip tests).
std::string emit_mps(const ProblemData& p);

}  // namespace aapdhg
