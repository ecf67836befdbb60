#pragma once

#include <cstdint>
#include <vector>

#include "aapdhg/vec.hpp"

namespace aapdhg {

struct Triplet {
  int row = 0;
  int col = 0;
  double val = 0.0;
};

// Compressed row storage. Column indices strictly increasing within a row;
// duplicates in the triplet input are summed during construction.
struct SparseMatrix {
  int nrows = 0;
  int ncols = 0;
  std::vector<int> row_ptr;  // size nrows + 1
  std::vector<int> col_idx;
  std::vector<double> vals;

  static SparseMatrix from_triplets(int nrows, int ncols,
                                    std::vector<Triplet> entries);
  std::size_t nnz() const { return vals.size(); }
};

// Stacks B below A. Both must share ncols.
SparseMatrix vstack(const SparseMatrix& a, const SparseMatrix& b);

void matvec(const SparseMatrix& m, const Vec& v, Vec& out);
Vec matvec(const SparseMatrix& m, const Vec& v);

// Product with M^T without materializing the transpose.
void matvec_transpose(const SparseMatrix& m, const Vec& v, Vec& out);
Vec matvec_transpose(const SparseMatrix& m, const Vec& v);

// Estimate of ||M||_2 via power iteration on M^T M. Deterministic for a fixed
// seed; returns 0 for an all-zero matrix.
double power_iteration_norm(const SparseMatrix& m, int max_iters,
                            double rel_tol, std::uint64_t seed);

// Column-major dense storage for the small AA memory blocks (p <= 20 or so).
struct DenseMatrix {
  int nrows = 0;
  int ncols = 0;
  std::vector<double> data;  // nrows * ncols, column-major

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : nrows(r), ncols(c), data(std::size_t(r) * c, 0.0) {}

  double& at(int i, int j) { return data[std::size_t(j) * nrows + i]; }
  double at(int i, int j) const { return data[std::size_t(j) * nrows + i]; }

  static DenseMatrix identity(int n);
};

struct QRFactors {
  DenseMatrix q;  // n x p, orthonormal columns
  DenseMatrix r;  // p x p, upper triangular, nonnegative diagonal
};

// Householder economy factorization, p <= n required. Sign flips are absorbed
// into Q so that diag(R) >= 0.
QRFactors economy_qr(const DenseMatrix& f);

// Solves R X = B for upper-triangular R. Throws SingularError when a diagonal
// entry falls below 1e-14 * ||R||_F.
DenseMatrix back_substitute(const DenseMatrix& r, const DenseMatrix& b);
Vec back_substitute(const DenseMatrix& r, const Vec& b);

}  // namespace aapdhg
