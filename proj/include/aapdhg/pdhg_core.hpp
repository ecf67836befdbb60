#pragma once

#include <utility>

#include "aapdhg/lp_model.hpp"
#include "aapdhg/vec.hpp"

namespace aapdhg {

// Concatenated primal-dual point u = (x, y), y stacked as (inequality, equality).
struct Iterate {
  Vec x;
  Vec y;
};

struct StepSizes {
  double tau = 0.0;
  double sigma = 0.0;
};

Vec project_box(const Vec& x, const Vec& l, const Vec& u);

// Clamps the first m1 components at zero from below, leaves the rest free.
Vec project_dual(const Vec& y, int m1);

Vec project_lambda(const Vec& v, const LambdaSpec& spec);

// Componentwise projection onto X x Y.
Iterate project_feasible(const Iterate& u, const ProblemData& p);

// One primal-dual update:
//   x+ = P_X(x - tau (c - K'y)),  y+ = P_Y(y + sigma (q - K (2 x+ - x))).
// Costs exactly two K products and one K' product.
Iterate pdhg_step(const Iterate& u, const ProblemData& p, const StepSizes& s);

// g = T(u) - u as one stacked vector, plus its Euclidean norm.
std::pair<Vec, double> fixed_point_residual(const Iterate& u, const Iterate& tu);

// <Mu, v> with M = [[I, tau K'], [sigma K, I]], computed matrix-free.
// Restricted to tau == sigma, where M is symmetric.
double m_inner_product(const Vec& u, const Vec& v, const ProblemData& p,
                       const StepSizes& s);

Vec concat_iterate(const Iterate& u);
Iterate split_iterate(const Vec& v, int n);

}  // namespace aapdhg
