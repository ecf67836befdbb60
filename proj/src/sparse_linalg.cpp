#include "aapdhg/sparse_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "aapdhg/errors.hpp"

namespace aapdhg {

SparseMatrix SparseMatrix::from_triplets(int nrows, int ncols,
                                         std::vector<Triplet> entries) {
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols)
      throw DimensionError("from_triplets: entry out of range");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m;
  m.nrows = nrows;
  m.ncols = ncols;
  m.row_ptr.assign(std::size_t(nrows) + 1, 0);
  m.col_idx.reserve(entries.size());
  m.vals.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < entries.size() && entries[j].row == entries[i].row &&
           entries[j].col == entries[i].col) {
      sum += entries[j].val;
      ++j;
    }
    m.col_idx.push_back(entries[i].col);
    m.vals.push_back(sum);
    m.row_ptr[std::size_t(entries[i].row) + 1]++;
    i = j;
  }
  for (int r = 0; r < nrows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  return m;
}

SparseMatrix vstack(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.ncols != b.ncols) throw DimensionError("vstack: column count mismatch");
  SparseMatrix m;
  m.nrows = a.nrows + b.nrows;
  m.ncols = a.ncols;
  m.row_ptr = a.row_ptr;
  m.row_ptr.reserve(std::size_t(m.nrows) + 1);
  const int base = a.row_ptr.empty() ? 0 : a.row_ptr.back();
  for (int r = 1; r <= b.nrows; ++r) m.row_ptr.push_back(base + b.row_ptr[r]);
  m.col_idx = a.col_idx;
  m.col_idx.insert(m.col_idx.end(), b.col_idx.begin(), b.col_idx.end());
  m.vals = a.vals;
  m.vals.insert(m.vals.end(), b.vals.begin(), b.vals.end());
  return m;
}

void matvec(const SparseMatrix& m, const Vec& v, Vec& out) {
  if (int(v.size()) != m.ncols) throw DimensionError("matvec: dim mismatch");
  out.assign(std::size_t(m.nrows), 0.0);
  for (int r = 0; r < m.nrows; ++r) {
    double s = 0.0;
    for (int k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k)
      s += m.vals[k] * v[m.col_idx[k]];
    out[r] = s;
  }
}

Vec matvec(const SparseMatrix& m, const Vec& v) {
  Vec out;
  matvec(m, v, out);
  return out;
}

void matvec_transpose(const SparseMatrix& m, const Vec& v, Vec& out) {
  if (int(v.size()) != m.nrows)
    throw DimensionError("matvec_transpose: dim mismatch");
  out.assign(std::size_t(m.ncols), 0.0);
  for (int r = 0; r < m.nrows; ++r) {
    const double vr = v[r];
    if (vr == 0.0) continue;
    for (int k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k)
      out[m.col_idx[k]] += m.vals[k] * vr;
  }
}

Vec matvec_transpose(const SparseMatrix& m, const Vec& v) {
  Vec out;
  matvec_transpose(m, v, out);
  return out;
}

double power_iteration_norm(const SparseMatrix& m, int max_iters,
                            double rel_tol, std::uint64_t seed) {
  bool all_zero = true;
  for (double v : m.vals)
    if (v != 0.0) { all_zero = false; break; }
  if (all_zero) return 0.0;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vec x(std::size_t(m.ncols));
  for (double& v : x) v = unif(rng);
  double xn = nrm2(x);
  if (xn == 0.0) { x[0] = 1.0; xn = 1.0; }
  for (double& v : x) v /= xn;

  Vec mx, mtmx;
  double est = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    matvec(m, x, mx);
    matvec_transpose(m, mx, mtmx);
    const double lam = nrm2(mtmx);  // Rayleigh quotient numerator; x is unit
    const double next = std::sqrt(lam);
    if (lam == 0.0) return 0.0;  // x fell in the null space; norm estimate void
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = mtmx[i] / lam;
    if (it > 0 && std::abs(next - est) < rel_tol * next) return next;
    est = next;
  }
  return est;
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

QRFactors economy_qr(const DenseMatrix& f) {
  const int n = f.nrows, p = f.ncols;
  if (p < 1 || p > n) throw DimensionError("economy_qr: need 1 <= p <= n");

  // Householder on a working copy; reflectors accumulated into Q afterwards.
  DenseMatrix w = f;
  std::vector<Vec> reflectors;
  reflectors.reserve(std::size_t(p));
  for (int j = 0; j < p; ++j) {
    Vec v(std::size_t(n - j), 0.0);
    double norm = 0.0;
    for (int i = j; i < n; ++i) norm += w.at(i, j) * w.at(i, j);
    norm = std::sqrt(norm);
    double alpha = w.at(j, j) >= 0.0 ? -norm : norm;
    if (norm > 0.0) {
      for (int i = j; i < n; ++i) v[std::size_t(i - j)] = w.at(i, j);
      v[0] -= alpha;
      const double vn = nrm2(v);
      if (vn > 0.0) {
        for (double& e : v) e /= vn;
        for (int c = j; c < p; ++c) {
          double s = 0.0;
          for (int i = j; i < n; ++i) s += v[std::size_t(i - j)] * w.at(i, c);
          s *= 2.0;
          for (int i = j; i < n; ++i) w.at(i, c) -= s * v[std::size_t(i - j)];
        }
      } else {
        v.assign(v.size(), 0.0);
      }
    }
    reflectors.push_back(std::move(v));
  }

  QRFactors out;
  out.r = DenseMatrix(p, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i <= j; ++i) out.r.at(i, j) = w.at(i, j);

  // Q = H_0 ... H_{p-1} applied to the first p identity columns.
  out.q = DenseMatrix(n, p);
  for (int c = 0; c < p; ++c) {
    Vec col(std::size_t(n), 0.0);
    col[std::size_t(c)] = 1.0;
    for (int j = p - 1; j >= 0; --j) {
      const Vec& v = reflectors[std::size_t(j)];
      double s = 0.0;
      for (int i = j; i < n; ++i) s += v[std::size_t(i - j)] * col[std::size_t(i)];
      s *= 2.0;
      for (int i = j; i < n; ++i) col[std::size_t(i)] -= s * v[std::size_t(i - j)];
    }
    for (int i = 0; i < n; ++i) out.q.at(i, c) = col[std::size_t(i)];
  }

  // Nonnegative-diagonal convention, sign flips absorbed into Q.
  for (int j = 0; j < p; ++j) {
    if (out.r.at(j, j) < 0.0) {
      for (int c = j; c < p; ++c) out.r.at(j, c) = -out.r.at(j, c);
      for (int i = 0; i < n; ++i) out.q.at(i, j) = -out.q.at(i, j);
    }
  }
  return out;
}

static double frobenius(const DenseMatrix& m) {
  double s = 0.0;
  for (double v : m.data) s += v * v;
  return std::sqrt(s);
}

DenseMatrix back_substitute(const DenseMatrix& r, const DenseMatrix& b) {
  const int p = r.nrows;
  if (r.ncols != p) throw DimensionError("back_substitute: R not square");
  if (b.nrows != p) throw DimensionError("back_substitute: rhs row mismatch");
  const double floor = 1e-14 * frobenius(r);
  for (int i = 0; i < p; ++i)
    if (std::abs(r.at(i, i)) <= floor)
      throw SingularError("back_substitute: zero diagonal");

  DenseMatrix x = b;
  for (int c = 0; c < b.ncols; ++c) {
    for (int i = p - 1; i >= 0; --i) {
      double s = x.at(i, c);
      for (int j = i + 1; j < p; ++j) s -= r.at(i, j) * x.at(j, c);
      x.at(i, c) = s / r.at(i, i);
    }
  }
  return x;
}

Vec back_substitute(const DenseMatrix& r, const Vec& b) {
  DenseMatrix rhs(int(b.size()), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs.at(int(i), 0) = b[i];
  DenseMatrix x = back_substitute(r, rhs);
  Vec out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = x.at(int(i), 0);
  return out;
}

}  // namespace aapdhg
