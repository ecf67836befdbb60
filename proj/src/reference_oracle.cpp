#include "aapdhg/reference_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "aapdhg/errors.hpp"
#include "aapdhg/pdhg_core.hpp"

namespace aapdhg {
namespace {

constexpr double kFeasTol = 1e-9;

struct Row {
  Vec coef;
  double rhs = 0.0;
  bool is_eq = false;  // false means coef'x >= rhs
};

std::vector<Row> assemble_rows(const ProblemData& p) {
  const int n = p.n();
  std::vector<Row> rows;
  for (int r = 0; r < p.m2(); ++r) {
    Row row;
    row.coef.assign(std::size_t(n), 0.0);
    for (int ptr = p.a.row_ptr[std::size_t(r)]; ptr < p.a.row_ptr[std::size_t(r) + 1]; ++ptr)
      row.coef[std::size_t(p.a.col_idx[std::size_t(ptr)])] = p.a.vals[std::size_t(ptr)];
    row.rhs = p.b[std::size_t(r)];
    row.is_eq = true;
    rows.push_back(std::move(row));
  }
  for (int r = 0; r < p.m1(); ++r) {
    Row row;
    row.coef.assign(std::size_t(n), 0.0);
    for (int ptr = p.g.row_ptr[std::size_t(r)]; ptr < p.g.row_ptr[std::size_t(r) + 1]; ++ptr)
      row.coef[std::size_t(p.g.col_idx[std::size_t(ptr)])] = p.g.vals[std::size_t(ptr)];
    row.rhs = p.h[std::size_t(r)];
    rows.push_back(std::move(row));
  }
  for (int idx = 0; idx < n; ++idx) {
    if (std::isfinite(p.l[std::size_t(idx)])) {
      Row row;
      row.coef.assign(std::size_t(n), 0.0);
      row.coef[std::size_t(idx)] = 1.0;
      row.rhs = p.l[std::size_t(idx)];
      rows.push_back(std::move(row));
    }
    if (std::isfinite(p.u[std::size_t(idx)])) {
      Row row;
      row.coef.assign(std::size_t(n), 0.0);
      row.coef[std::size_t(idx)] = -1.0;
      row.rhs = -p.u[std::size_t(idx)];
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

bool feasible(const Vec& x, const std::vector<Row>& rows) {
  for (const Row& row : rows) {
    const double v = dot(row.coef, x);
    const double tol = kFeasTol * (1.0 + std::abs(row.rhs));
    if (row.is_eq) {
      if (std::abs(v - row.rhs) > tol) return false;
    } else {
      if (v < row.rhs - tol) return false;
    }
  }
  return true;
}

// Gaussian elimination with partial pivoting; false when singular.
bool dense_solve(std::vector<Vec> a, Vec rhs, Vec& x) {
  const int n = int(rhs.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[std::size_t(r)][std::size_t(col)]) >
          std::abs(a[std::size_t(piv)][std::size_t(col)]))
        piv = r;
    if (std::abs(a[std::size_t(piv)][std::size_t(col)]) < 1e-12) return false;
    std::swap(a[std::size_t(piv)], a[std::size_t(col)]);
    std::swap(rhs[std::size_t(piv)], rhs[std::size_t(col)]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[std::size_t(r)][std::size_t(col)] /
                       a[std::size_t(col)][std::size_t(col)];
      if (f == 0.0) continue;
      for (int cc = col; cc < n; ++cc)
        a[std::size_t(r)][std::size_t(cc)] -= f * a[std::size_t(col)][std::size_t(cc)];
      rhs[std::size_t(r)] -= f * rhs[std::size_t(col)];
    }
  }
  x.assign(std::size_t(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = rhs[std::size_t(r)];
    for (int cc = r + 1; cc < n; ++cc)
      s -= a[std::size_t(r)][std::size_t(cc)] * x[std::size_t(cc)];
    x[std::size_t(r)] = s / a[std::size_t(r)][std::size_t(r)];
  }
  return true;
}

// One basis vector per free column of the nullspace of the stacked rows.
std::vector<Vec> nullspace_directions(const std::vector<const Row*>& rows, int n) {
  std::vector<Vec> a;
  for (const Row* row : rows) a.push_back(row->coef);
  const int m = int(a.size());

  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    double best = 1e-12;
    for (int r = rank; r < m; ++r) {
      if (std::abs(a[std::size_t(r)][std::size_t(col)]) > best) {
        best = std::abs(a[std::size_t(r)][std::size_t(col)]);
        piv = r;
      }
    }
    if (piv < 0) continue;
    std::swap(a[std::size_t(piv)], a[std::size_t(rank)]);
    const double d = a[std::size_t(rank)][std::size_t(col)];
    for (int cc = 0; cc < n; ++cc) a[std::size_t(rank)][std::size_t(cc)] /= d;
    for (int r = 0; r < m; ++r) {
      if (r == rank) continue;
      const double f = a[std::size_t(r)][std::size_t(col)];
      if (f == 0.0) continue;
      for (int cc = 0; cc < n; ++cc)
        a[std::size_t(r)][std::size_t(cc)] -= f * a[std::size_t(rank)][std::size_t(cc)];
    }
    pivot_col.push_back(col);
    ++rank;
  }

  std::vector<Vec> dirs;
  std::vector<char> is_pivot(std::size_t(n), 0);
  for (int col : pivot_col) is_pivot[std::size_t(col)] = 1;
  for (int free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[std::size_t(free_col)]) continue;
    Vec d(std::size_t(n), 0.0);
    d[std::size_t(free_col)] = 1.0;
    for (int r = 0; r < rank; ++r)
      d[std::size_t(pivot_col[std::size_t(r)])] =
          -a[std::size_t(r)][std::size_t(free_col)];
    const double nm = nrm2(d);
    if (nm > 0.0) {
      for (double& v : d) v /= nm;
      dirs.push_back(std::move(d));
    }
  }
  return dirs;
}

bool recession_feasible(const Vec& d, const std::vector<Row>& rows) {
  for (const Row& row : rows) {
    const double v = dot(row.coef, d);
    if (row.is_eq) {
      if (std::abs(v) > kFeasTol) return false;
    } else {
      if (v < -kFeasTol) return false;
    }
  }
  return true;
}

}  // namespace

OracleResult solve_tiny(const ProblemData& p) {
  const int n = p.n();
  const std::vector<Row> rows = assemble_rows(p);
  const int m = int(rows.size());
  if (n > 6 || m > 24)
    throw InputError("solve_tiny: instance too large for enumeration");

  OracleResult best;
  bool have_best = false;
  std::vector<Vec> feasible_points;

  // vertices: every n-subset of rows treated as tight
  if (m >= n && n >= 1) {
    std::vector<int> pick(std::size_t(n), 0);
    for (int idx = 0; idx < n; ++idx) pick[std::size_t(idx)] = idx;
    while (true) {
      std::vector<Vec> a;
      Vec rhs;
      for (int idx : pick) {
        a.push_back(rows[std::size_t(idx)].coef);
        rhs.push_back(rows[std::size_t(idx)].rhs);
      }
      Vec x;
      if (dense_solve(std::move(a), std::move(rhs), x) && feasible(x, rows)) {
        feasible_points.push_back(x);
        const double obj = dot(p.c, x);
        const double tol = kFeasTol * (1.0 + std::abs(obj));
        if (!have_best || obj < best.objective - tol ||
            (std::abs(obj - best.objective) <= tol &&
             std::lexicographical_compare(x.begin(), x.end(), best.x.begin(),
                                          best.x.end()))) {
          best.x = x;
          best.objective = obj;
          have_best = true;
        }
      }

      int pos = n - 1;
      while (pos >= 0 && pick[std::size_t(pos)] == m - n + pos) --pos;
      if (pos < 0) break;
      ++pick[std::size_t(pos)];
      for (int later = pos + 1; later < n; ++later)
        pick[std::size_t(later)] = pick[std::size_t(later) - 1] + 1;
    }
  }

  const Vec origin = project_box(Vec(std::size_t(n), 0.0), p.l, p.u);
  if (feasible(origin, rows)) feasible_points.push_back(origin);

  if (!feasible_points.empty()) {
    // candidate rays: nullspace directions of (n-1)-subsets plus axes
    std::vector<Vec> candidates;
    for (int idx = 0; idx < n; ++idx) {
      Vec e(std::size_t(n), 0.0);
      e[std::size_t(idx)] = 1.0;
      candidates.push_back(e);
    }
    if (n >= 2 && m >= n - 1) {
      std::vector<int> pick(std::size_t(n - 1), 0);
      for (int idx = 0; idx < n - 1; ++idx) pick[std::size_t(idx)] = idx;
      while (true) {
        std::vector<const Row*> sel;
        for (int idx : pick) sel.push_back(&rows[std::size_t(idx)]);
        for (Vec& d : nullspace_directions(sel, n))
          candidates.push_back(std::move(d));

        int pos = n - 2;
        while (pos >= 0 && pick[std::size_t(pos)] == m - (n - 1) + pos) --pos;
        if (pos < 0) break;
        ++pick[std::size_t(pos)];
        for (int later = pos + 1; later < n - 1; ++later)
          pick[std::size_t(later)] = pick[std::size_t(later) - 1] + 1;
      }
    }
    for (const Vec& cand : candidates) {
      for (const double sign : {1.0, -1.0}) {
        Vec d = scaled(cand, sign);
        if (dot(p.c, d) < -kFeasTol && recession_feasible(d, rows)) {
          OracleResult res;
          res.status = OracleStatus::kUnbounded;
          return res;
        }
      }
    }
  }

  if (have_best) {
    best.status = OracleStatus::kOptimal;
    return best;
  }
  return OracleResult{};  // no feasible vertex found
}

}  // namespace aapdhg
