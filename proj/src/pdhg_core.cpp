#include "aapdhg/pdhg_core.hpp"

#include <algorithm>
#include <cmath>

#include "aapdhg/errors.hpp"

namespace aapdhg {

Vec project_box(const Vec& x, const Vec& l, const Vec& u) {
  if (x.size() != l.size() || x.size() != u.size())
    throw DimensionError("project_box: size mismatch");
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = std::min(std::max(x[i], l[i]), u[i]);
  return out;
}

Vec project_dual(const Vec& y, int m1) {
  if (m1 < 0 || std::size_t(m1) > y.size())
    throw DimensionError("project_dual: bad m1");
  Vec out = y;
  for (int i = 0; i < m1; ++i) out[std::size_t(i)] = std::max(out[std::size_t(i)], 0.0);
  return out;
}

Vec project_lambda(const Vec& v, const LambdaSpec& spec) {
  if (v.size() != spec.size()) throw DimensionError("project_lambda: size mismatch");
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    switch (spec[i]) {
      case LambdaTag::kZero: out[i] = 0.0; break;
      case LambdaTag::kNonpos: out[i] = std::min(v[i], 0.0); break;
      case LambdaTag::kNonneg: out[i] = std::max(v[i], 0.0); break;
      case LambdaTag::kFree: out[i] = v[i]; break;
    }
  }
  return out;
}

Iterate project_feasible(const Iterate& u, const ProblemData& p) {
  return {project_box(u.x, p.l, p.u), project_dual(u.y, p.m1())};
}

Iterate pdhg_step(const Iterate& u, const ProblemData& p, const StepSizes& s) {
  if (int(u.x.size()) != p.n() || int(u.y.size()) != p.m1() + p.m2())
    throw DimensionError("pdhg_step: iterate dims mismatch");

  Vec kty = matvec_transpose(p.k, u.y);
  Vec xn(u.x.size());
  for (std::size_t i = 0; i < xn.size(); ++i)
    xn[i] = u.x[i] - s.tau * (p.c[i] - kty[i]);
  xn = project_box(xn, p.l, p.u);

  Vec k_xn = matvec(p.k, xn);
  Vec k_x = matvec(p.k, u.x);
  Vec yn(u.y.size());
  for (std::size_t i = 0; i < yn.size(); ++i)
    yn[i] = u.y[i] + s.sigma * (p.q[i] - (2.0 * k_xn[i] - k_x[i]));
  yn = project_dual(yn, p.m1());

  return {std::move(xn), std::move(yn)};
}

std::pair<Vec, double> fixed_point_residual(const Iterate& u, const Iterate& tu) {
  if (u.x.size() != tu.x.size() || u.y.size() != tu.y.size())
    throw DimensionError("fixed_point_residual: dims mismatch");
  Vec g(u.x.size() + u.y.size());
  for (std::size_t i = 0; i < u.x.size(); ++i) g[i] = tu.x[i] - u.x[i];
  for (std::size_t i = 0; i < u.y.size(); ++i)
    g[u.x.size() + i] = tu.y[i] - u.y[i];
  const double norm = nrm2(g);
  return {std::move(g), norm};
}

double m_inner_product(const Vec& u, const Vec& v, const ProblemData& p,
                       const StepSizes& s) {
  if (s.tau != s.sigma)
    throw UnsupportedError("m_inner_product requires tau == sigma");
  const std::size_t n = std::size_t(p.n());
  const std::size_t m = std::size_t(p.m1() + p.m2());
  if (u.size() != n + m || v.size() != n + m)
    throw DimensionError("m_inner_product: size mismatch");

  Vec ux(u.begin(), u.begin() + long(n)), uy(u.begin() + long(n), u.end());
  Vec vx(v.begin(), v.begin() + long(n)), vy(v.begin() + long(n), v.end());

  double out = dot(ux, vx) + dot(uy, vy);
  out += s.tau * dot(matvec_transpose(p.k, uy), vx);
  out += s.tau * dot(matvec(p.k, ux), vy);
  return out;
}

Vec concat_iterate(const Iterate& u) {
  Vec out = u.x;
  out.insert(out.end(), u.y.begin(), u.y.end());
  return out;
}

Iterate split_iterate(const Vec& v, int n) {
  if (int(v.size()) < n) throw DimensionError("split_iterate: vector too short");
  return {Vec(v.begin(), v.begin() + n), Vec(v.begin() + n, v.end())};
}

}  // namespace aapdhg
