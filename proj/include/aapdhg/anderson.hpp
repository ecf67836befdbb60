#pragma once

#include <cstddef>
#include <vector>

#include "aapdhg/vec.hpp"

namespace aapdhg {

// Difference memory. Columns ordered oldest to newest, equal counts, at most
// `capacity` pairs.
struct AAMemory {
  std::vector<Vec> du_cols;
  std::vector<Vec> dg_cols;
  std::size_t capacity = 5;

  std::size_t size() const { return du_cols.size(); }
  bool empty() const { return du_cols.empty(); }
};

struct AAParams {
  double beta = 1.0;
  Vec d_hat;          // diagonal scaling; empty means identity
  double eta = 1e-10; // Tikhonov weight, applied as eta * ||dG||_F^2
};

// Appends the pair at the newest end; evicts the oldest beyond capacity.
void memory_push(AAMemory& mem, Vec du, Vec dg);

// beta * Dhat * v, with empty d_hat meaning the identity diagonal.
Vec damp(const AAParams& params, const Vec& v);

// Accelerated candidate u - H g with
//   H = -beta*Dhat + (dU + beta*Dhat*dG) (dG'dG + eta_eff I)^{-1} dG'.
// H is applied through a p x p solve, never formed. Empty memory yields
// u + beta*Dhat*g. Throws SingularError when eta is zero and the normal
// equations are rank deficient.
Vec aa_apply(const AAMemory& mem, const AAParams& params, const Vec& u,
             const Vec& g);

// Affine weights minimizing || sum_i alpha_i residuals[i] || subject to
// sum alpha = 1. Degenerate Gram matrices get the minimal-norm solution.
Vec standard_aa_weights(const std::vector<Vec>& residuals);

// x_next = (1-beta) sum alpha_i points[i] + beta sum alpha_i images[i].
Vec standard_aa_step(const std::vector<Vec>& points,
                     const std::vector<Vec>& images, const Vec& weights,
                     double beta);

}  // namespace aapdhg
