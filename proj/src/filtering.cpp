#include "aapdhg/filtering.hpp"

#include <algorithm>
#include <cmath>

#include "aapdhg/errors.hpp"

namespace aapdhg {
namespace {

DenseMatrix dense_from_columns(const ColumnList& cols) {
  const int n = int(cols.front().size());
  const int p = int(cols.size());
  DenseMatrix m(n, p);
  for (int j = 0; j < p; ++j) {
    if (int(cols[std::size_t(j)].size()) != n)
      throw DimensionError("filtering: ragged column list");
    for (int i = 0; i < n; ++i) m.at(i, j) = cols[std::size_t(j)][std::size_t(i)];
  }
  return m;
}

// |diag(R)| of the Householder QR of `w`, overwriting `w`. Works for any
// column count; columns past the row dimension have no diagonal entry.
Vec qr_diagonal(DenseMatrix w) {
  const int n = w.nrows, p = w.ncols;
  const int steps = std::min(n, p);
  Vec diag(std::size_t(steps), 0.0);
  Vec v(std::size_t(n), 0.0);
  for (int j = 0; j < steps; ++j) {
    double nrm_sq = 0.0;
    for (int i = j; i < n; ++i) nrm_sq += w.at(i, j) * w.at(i, j);
    const double nrm = std::sqrt(nrm_sq);
    diag[std::size_t(j)] = nrm;
    if (nrm == 0.0) continue;
    const double alpha = w.at(j, j) >= 0.0 ? -nrm : nrm;
    v[std::size_t(j)] = w.at(j, j) - alpha;
    for (int i = j + 1; i < n; ++i) v[std::size_t(i)] = w.at(i, j);
    double vv = 0.0;
    for (int i = j; i < n; ++i) vv += v[std::size_t(i)] * v[std::size_t(i)];
    if (vv == 0.0) continue;
    for (int col = j + 1; col < p; ++col) {
      double vw = 0.0;
      for (int i = j; i < n; ++i) vw += v[std::size_t(i)] * w.at(i, col);
      const double coef = 2.0 * vw / vv;
      for (int i = j; i < n; ++i) w.at(i, col) -= coef * v[std::size_t(i)];
    }
  }
  return diag;
}

ColumnList select(const ColumnList& cols, const std::vector<char>& keep) {
  ColumnList out;
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (keep[i]) out.push_back(cols[i]);
  return out;
}

}  // namespace

std::pair<ColumnList, ColumnList> reverse_columns(ColumnList e, ColumnList f) {
  if (e.size() != f.size())
    throw DimensionError("reverse_columns: count mismatch");
  std::reverse(e.begin(), e.end());
  std::reverse(f.begin(), f.end());
  return {std::move(e), std::move(f)};
}

std::pair<ColumnList, ColumnList> angle_filter(ColumnList e, ColumnList f,
                                               double c_s) {
  if (e.size() != f.size()) throw DimensionError("angle_filter: count mismatch");
  if (f.empty()) return {std::move(e), std::move(f)};

  const std::size_t p = f.size();
  const std::size_t n = f.front().size();
  const Vec diag = qr_diagonal(dense_from_columns(f));

  std::vector<char> keep(p, 1);
  for (std::size_t i = 0; i < p; ++i) {
    const double fn = nrm2(f[i]);
    // columns beyond the row dimension add no new direction
    const double sine = (i < n && fn > 0.0) ? diag[i] / fn : 0.0;
    if (i == 0) {
      if (fn == 0.0) throw SingularError("angle_filter: zero leading column");
      continue;
    }
    if (sine < c_s) keep[i] = 0;
  }
  return {select(e, keep), select(f, keep)};
}

Vec length_bounds(const ColumnList& f, double c_s) {
  const std::size_t m = f.size();
  Vec b(m, 0.0);
  if (m == 0) return b;
  const double cs2 = c_s * c_s;
  const double ct = std::sqrt(std::max(0.0, 1.0 - cs2));
  const double ct2 = ct * ct;

  Vec fn_sq(m);
  for (std::size_t i = 0; i < m; ++i) fn_sq[i] = nrm2sq(f[i]);

  b[0] = 1.0 / fn_sq[0];
  for (std::size_t jj = 1; jj < m; ++jj) {
    const int j = int(jj) + 1;  // 1-indexed column number
    double acc = ct2 * std::pow((ct + c_s) / c_s, 2.0 * (j - 2)) / fn_sq[0];
    for (int i = 2; i <= j - 1; ++i)
      acc += ct2 * std::pow(ct + c_s, 2.0 * (j - i - 1)) /
             (fn_sq[std::size_t(i - 1)] * std::pow(c_s, 2.0 * (j - i)));
    acc += 1.0 / fn_sq[jj];
    b[jj] = acc / cs2;
  }
  return b;
}

std::pair<ColumnList, ColumnList> length_filter(ColumnList e, ColumnList f,
                                                double c_s, double kappa_bar) {
  if (e.size() != f.size()) throw DimensionError("length_filter: count mismatch");
  const std::size_t m = f.size();
  if (m == 0) return {std::move(e), std::move(f)};

  const Vec b = length_bounds(f, c_s);
  Vec e_prefix(m + 1, 0.0), b_prefix(m + 1, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    e_prefix[j + 1] = e_prefix[j] + nrm2sq(e[j]);
    b_prefix[j + 1] = b_prefix[j] + b[j];
  }

  const double cap = kappa_bar * kappa_bar;
  for (std::size_t k = m; k >= 1; --k) {
    if (e_prefix[k] * b_prefix[k] <= cap) {
      e.resize(k);
      f.resize(k);
      return {std::move(e), std::move(f)};
    }
  }
  return {ColumnList{}, ColumnList{}};
}

FilteredMemory build_filtered_memory(ColumnList e, ColumnList f,
                                     const FilterParams& params) {
  if (e.size() != f.size())
    throw DimensionError("build_filtered_memory: count mismatch");
  FilteredMemory fm;
  if (f.empty()) return fm;

  std::tie(e, f) = reverse_columns(std::move(e), std::move(f));
  std::tie(e, f) = angle_filter(std::move(e), std::move(f), params.c_s);
  std::tie(e, f) =
      length_filter(std::move(e), std::move(f), params.c_s, params.kappa_bar);
  std::tie(e, f) = reverse_columns(std::move(e), std::move(f));

  fm.e = std::move(e);
  fm.f = std::move(f);
  if (!fm.empty()) fm.qr = economy_qr(dense_from_columns(fm.f));
  return fm;
}

Vec filtered_aa_apply(const FilteredMemory& fm, const AAParams& params,
                      const Vec& u, const Vec& g) {
  if (u.size() != g.size())
    throw DimensionError("filtered_aa_apply: u/g size mismatch");
  Vec out = add(u, damp(params, g));
  if (fm.empty()) return out;

  const int n = fm.qr.q.nrows, p = fm.qr.q.ncols;
  if (n != int(g.size())) throw DimensionError("filtered_aa_apply: qr size mismatch");
  Vec qtg(std::size_t(p), 0.0);
  for (int j = 0; j < p; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += fm.qr.q.at(i, j) * g[std::size_t(i)];
    qtg[std::size_t(j)] = s;
  }
  const Vec w = back_substitute(fm.qr.r, qtg);

  for (int j = 0; j < p; ++j) {
    axpy(-w[std::size_t(j)], fm.e[std::size_t(j)], out);
    axpy(-w[std::size_t(j)], damp(params, fm.f[std::size_t(j)]), out);
  }
  return out;
}

}  // namespace aapdhg
