#include "aapdhg/anderson.hpp"

#include <cmath>

#include "aapdhg/errors.hpp"
#include "aapdhg/sparse_linalg.hpp"

namespace aapdhg {

Vec damp(const AAParams& params, const Vec& v) {
  if (params.d_hat.empty()) return scaled(v, params.beta);
  if (params.d_hat.size() != v.size())
    throw DimensionError("aa: d_hat size mismatch");
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (params.d_hat[i] <= 0.0) throw InputError("aa: d_hat entries must be > 0");
    out[i] = params.beta * params.d_hat[i] * v[i];
  }
  return out;
}

namespace {

// Cholesky solve of a small SPD system; zero or negative pivots mean the
// regularization vanished on a rank-deficient Gram.
Vec cholesky_solve(DenseMatrix a, Vec rhs) {
  const int p = a.nrows;
  for (int j = 0; j < p; ++j) {
    double d = a.at(j, j);
    for (int k = 0; k < j; ++k) d -= a.at(j, k) * a.at(j, k);
    if (d <= 0.0) throw SingularError("aa: normal equations not positive definite");
    d = std::sqrt(d);
    a.at(j, j) = d;
    for (int i = j + 1; i < p; ++i) {
      double s = a.at(i, j);
      for (int k = 0; k < j; ++k) s -= a.at(i, k) * a.at(j, k);
      a.at(i, j) = s / d;
    }
  }
  for (int i = 0; i < p; ++i) {
    double s = rhs[std::size_t(i)];
    for (int k = 0; k < i; ++k) s -= a.at(i, k) * rhs[std::size_t(k)];
    rhs[std::size_t(i)] = s / a.at(i, i);
  }
  for (int i = p - 1; i >= 0; --i) {
    double s = rhs[std::size_t(i)];
    for (int k = i + 1; k < p; ++k) s -= a.at(k, i) * rhs[std::size_t(k)];
    rhs[std::size_t(i)] = s / a.at(i, i);
  }
  return rhs;
}

// Cyclic Jacobi eigendecomposition of a symmetric matrix, a = v diag(d) v'.
void jacobi_eigh(DenseMatrix a, Vec& eigvals, DenseMatrix& eigvecs) {
  const int p = a.nrows;
  eigvecs = DenseMatrix::identity(p);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) off += a.at(i, j) * a.at(i, j);
    if (off < 1e-30) break;
    for (int i = 0; i < p; ++i) {
      for (int j = i + 1; j < p; ++j) {
        if (a.at(i, j) == 0.0) continue;
        const double theta = (a.at(j, j) - a.at(i, i)) / (2.0 * a.at(i, j));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < p; ++k) {
          const double aki = a.at(k, i), akj = a.at(k, j);
          a.at(k, i) = c * aki - s * akj;
          a.at(k, j) = s * aki + c * akj;
        }
        for (int k = 0; k < p; ++k) {
          const double aik = a.at(i, k), ajk = a.at(j, k);
          a.at(i, k) = c * aik - s * ajk;
          a.at(j, k) = s * aik + c * ajk;
        }
        for (int k = 0; k < p; ++k) {
          const double vki = eigvecs.at(k, i), vkj = eigvecs.at(k, j);
          eigvecs.at(k, i) = c * vki - s * vkj;
          eigvecs.at(k, j) = s * vki + c * vkj;
        }
      }
    }
  }
  eigvals.assign(std::size_t(p), 0.0);
  for (int i = 0; i < p; ++i) eigvals[std::size_t(i)] = a.at(i, i);
}

}  // namespace

void memory_push(AAMemory& mem, Vec du, Vec dg) {
  if (du.size() != dg.size()) throw DimensionError("memory_push: pair size mismatch");
  if (!mem.du_cols.empty() && mem.du_cols.front().size() != du.size())
    throw DimensionError("memory_push: column size mismatch");
  mem.du_cols.push_back(std::move(du));
  mem.dg_cols.push_back(std::move(dg));
  while (mem.du_cols.size() > mem.capacity) {
    mem.du_cols.erase(mem.du_cols.begin());
    mem.dg_cols.erase(mem.dg_cols.begin());
  }
}

Vec aa_apply(const AAMemory& mem, const AAParams& params, const Vec& u,
             const Vec& g) {
  if (u.size() != g.size()) throw DimensionError("aa_apply: u/g size mismatch");
  Vec out = add(u, damp(params, g));
  if (mem.empty()) return out;

  const int p = int(mem.size());
  DenseMatrix gram(p, p);
  double frob_sq = 0.0;
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      const double v = dot(mem.dg_cols[std::size_t(i)], mem.dg_cols[std::size_t(j)]);
      gram.at(i, j) = v;
      gram.at(j, i) = v;
    }
    frob_sq += gram.at(i, i);
  }
  const double eta_eff = params.eta * frob_sq;
  for (int i = 0; i < p; ++i) gram.at(i, i) += eta_eff;

  Vec rhs(std::size_t(p), 0.0);
  for (int i = 0; i < p; ++i) rhs[std::size_t(i)] = dot(mem.dg_cols[std::size_t(i)], g);
  const Vec w = cholesky_solve(std::move(gram), std::move(rhs));

  for (int j = 0; j < p; ++j) {
    axpy(-w[std::size_t(j)], mem.du_cols[std::size_t(j)], out);
    axpy(-w[std::size_t(j)], damp(params, mem.dg_cols[std::size_t(j)]), out);
  }
  return out;
}

Vec standard_aa_weights(const std::vector<Vec>& residuals) {
  if (residuals.empty()) throw InputError("standard_aa_weights: empty input");
  const int q = int(residuals.size());
  if (q == 1) return {1.0};
  const Vec& last = residuals.back();

  // Reparameterize against the last residual: minimize ||last + D gamma|| with
  // columns d_i = residuals[i] - last, then alpha_i = gamma_i, alpha_last =
  // 1 - sum(gamma).
  const int p = q - 1;
  std::vector<Vec> d(std::size_t(p), Vec{});
  for (int i = 0; i < p; ++i) d[std::size_t(i)] = sub(residuals[std::size_t(i)], last);

  DenseMatrix gram(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      const double v = dot(d[std::size_t(i)], d[std::size_t(j)]);
      gram.at(i, j) = v;
      gram.at(j, i) = v;
    }
  Vec rhs(std::size_t(p), 0.0);
  for (int i = 0; i < p; ++i) rhs[std::size_t(i)] = -dot(d[std::size_t(i)], last);

  // Minimal-norm solve through the eigendecomposition pseudo-inverse; rank
  // deficiency is expected when residual differences repeat.
  Vec eigvals;
  DenseMatrix eigvecs;
  jacobi_eigh(gram, eigvals, eigvecs);
  double max_eig = 0.0;
  for (double v : eigvals) max_eig = std::max(max_eig, std::abs(v));
  const double cut = 1e-12 * max_eig;

  Vec gamma(std::size_t(p), 0.0);
  for (int e = 0; e < p; ++e) {
    if (std::abs(eigvals[std::size_t(e)]) <= cut) continue;
    double proj = 0.0;
    for (int i = 0; i < p; ++i) proj += eigvecs.at(i, e) * rhs[std::size_t(i)];
    proj /= eigvals[std::size_t(e)];
    for (int i = 0; i < p; ++i) gamma[std::size_t(i)] += proj * eigvecs.at(i, e);
  }

  Vec alpha(std::size_t(q), 0.0);
  double sum = 0.0;
  for (int i = 0; i < p; ++i) {
    alpha[std::size_t(i)] = gamma[std::size_t(i)];
    sum += gamma[std::size_t(i)];
  }
  alpha[std::size_t(q - 1)] = 1.0 - sum;
  return alpha;
}

Vec standard_aa_step(const std::vector<Vec>& points,
                     const std::vector<Vec>& images, const Vec& weights,
                     double beta) {
  if (points.size() != images.size() || points.size() != weights.size())
    throw DimensionError("standard_aa_step: length mismatch");
  if (points.empty()) throw InputError("standard_aa_step: empty input");
  Vec out(points.front().size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    axpy((1.0 - beta) * weights[i], points[i], out);
    axpy(beta * weights[i], images[i], out);
  }
  return out;
}

}  // namespace aapdhg
