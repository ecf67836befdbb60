#include "aapdhg/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "aapdhg/errors.hpp"
#include "aapdhg/logging.hpp"
#include "aapdhg/sparse_linalg.hpp"

namespace aapdhg {
namespace {

constexpr int kPowerMaxIters = 5000;
constexpr double kPowerRelTol = 1e-4;
constexpr unsigned kPowerSeed = 12345;  // fixed so repeated runs are bitwise equal

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate(const SolverConfig& cfg) {
  if (cfg.m < 1) throw InputError("solver: m must be >= 1");
  if (cfg.safeguard_d <= 0.0) throw InputError("solver: D must be > 0");
  if (cfg.safeguard_eps <= 0.0) throw InputError("solver: eps must be > 0");
  if (cfg.toll <= 0.0) throw InputError("solver: toll must be > 0");
  if (cfg.kkt_eps <= 0.0) throw InputError("solver: kkt_eps must be > 0");
  if (cfg.aa.beta <= 0.0 || cfg.aa.beta > 1.0)
    throw InputError("solver: beta must be in (0, 1]");
  if (cfg.aa.eta < 0.0) throw InputError("solver: eta must be >= 0");
  if (cfg.filter.c_s <= 0.0 || cfg.filter.c_s > 1.0)
    throw InputError("solver: c_s must be in (0, 1]");
  if (cfg.filter.kappa_bar <= 0.0)
    throw InputError("solver: kappa_bar must be > 0");
}

// Carried FAA memory; between AA steps it only accumulates with FIFO
// eviction, the filters run when an AA step is attempted.
struct FaaState {
  ColumnList e, f;

  void push(Vec du, Vec dg, std::size_t cap) {
    e.push_back(std::move(du));
    f.push_back(std::move(dg));
    while (e.size() > cap) {
      e.erase(e.begin());
      f.erase(f.begin());
    }
  }
};

}  // namespace

double KktMetrics::max() const { return std::max({r_gap, r_primal, r_dual}); }

bool safeguard_pass(double g_norm, double g0_norm, std::size_t i, double d,
                    double eps) {
  return g_norm <= d * g0_norm * std::pow(double(i) + 1.0, -(1.0 + eps));
}

std::pair<KktMetrics, Vec> kkt_metrics(const Iterate& u, const ProblemData& p,
                                       const LambdaSpec& spec) {
  const int n = p.n(), m1 = p.m1(), m2 = p.m2();
  const Vec kty = matvec_transpose(p.k, u.y);
  Vec reduced(std::size_t(n), 0.0);
  for (int idx = 0; idx < n; ++idx)
    reduced[std::size_t(idx)] = p.c[std::size_t(idx)] - kty[std::size_t(idx)];
  Vec lambda = project_lambda(reduced, spec);

  // finite-bound terms of the dual objective; infinite bounds pair with a
  // zero multiplier sign by construction of Lambda
  double bound_terms = 0.0;
  for (int idx = 0; idx < n; ++idx) {
    const double lam = lambda[std::size_t(idx)];
    if (std::isfinite(p.l[std::size_t(idx)]) && lam > 0.0)
      bound_terms += p.l[std::size_t(idx)] * lam;
    if (std::isfinite(p.u[std::size_t(idx)]) && lam < 0.0)
      bound_terms += p.u[std::size_t(idx)] * lam;
  }
  const double dual_core = dot(p.q, u.y) + bound_terms;
  const double primal_obj = dot(p.c, u.x);

  KktMetrics kkt;
  kkt.r_gap = std::abs(dual_core - primal_obj) /
              (1.0 + std::abs(dual_core) + std::abs(primal_obj));

  const Vec kx = matvec(p.k, u.x);
  double infeas_sq = 0.0;
  for (int r = 0; r < m1; ++r) {
    const double v = std::max(p.h[std::size_t(r)] - kx[std::size_t(r)], 0.0);
    infeas_sq += v * v;
  }
  for (int r = 0; r < m2; ++r) {
    const double v = p.b[std::size_t(r)] - kx[std::size_t(m1 + r)];
    infeas_sq += v * v;
  }
  kkt.r_primal = std::sqrt(infeas_sq) / (1.0 + nrm2(p.q));

  double dual_sq = 0.0;
  for (int idx = 0; idx < n; ++idx) {
    const double v = reduced[std::size_t(idx)] - lambda[std::size_t(idx)];
    dual_sq += v * v;
  }
  kkt.r_dual = std::sqrt(dual_sq) / (1.0 + nrm2(p.c));

  return {kkt, std::move(lambda)};
}

StepSizes select_step_sizes(const ProblemData& p, const SolverConfig& cfg) {
  if (cfg.tau > 0.0 || cfg.sigma > 0.0) {
    if (!(cfg.tau > 0.0 && cfg.sigma > 0.0))
      throw InputError("step sizes: override requires both tau and sigma");
    return {cfg.tau, cfg.sigma};
  }
  const double k_norm =
      power_iteration_norm(p.k, kPowerMaxIters, kPowerRelTol, kPowerSeed);
  if (k_norm == 0.0) return {1.0, 1.0};
  const double s = 0.9 / k_norm;
  return {s, s};
}

SolveOutput solve(const ProblemData& p, const SolverConfig& cfg,
                  const Iterate& u0) {
  const auto t0 = Clock::now();
  validate(cfg);

  const LambdaSpec spec = build_lambda_set(p.l, p.u);
  const StepSizes steps = select_step_sizes(p, cfg);

  SolveOutput out;
  out.result.steps = steps;

  std::size_t i = 0, j = 0, aa_failures = 0;

  auto record = [&](std::size_t k, double g_norm, bool aa_step, std::size_t ik,
                    std::size_t jk, const Iterate& produced) {
    TrajectoryRecord r;
    r.k = k;
    r.g_norm = g_norm;
    r.aa_step = aa_step;
    r.i = ik;
    r.j = jk;
    r.kkt = kkt_metrics(produced, p, spec).first;
    r.objective = dot(p.c, produced.x);
    r.elapsed_s = seconds_since(t0);
    out.trajectory.push_back(r);
    return r.kkt;
  };

  auto finish = [&](SolveStatus st, const Iterate& u_final, double g_final) {
    out.result.status = st;
    auto [kkt, lambda] = kkt_metrics(u_final, p, spec);
    out.result.kkt = kkt;
    out.result.lambda = std::move(lambda);
    out.result.u = u_final;
    out.result.iterations = i + j;
    out.result.i = i;
    out.result.j = j;
    out.result.aa_failures = aa_failures;
    out.result.g_norm = g_final;
    out.result.objective = dot(p.c, u_final.x);
    out.result.wall_seconds = seconds_since(t0);
  };

  Iterate u_prev = project_feasible(u0, p);
  Iterate uh = pdhg_step(u_prev, p, steps);
  auto [g_prev, g0n] = fixed_point_residual(u_prev, uh);

  const KktMetrics kkt0 = record(0, g0n, false, 0, 0, uh);
  if (g0n == 0.0) {
    finish(SolveStatus::kFixedPointStart, u_prev, 0.0);
    return out;
  }
  if (cfg.kkt_terminate && kkt0.max() <= cfg.kkt_eps) {
    const Iterate tn = pdhg_step(uh, p, steps);
    finish(SolveStatus::kKktTol, uh, fixed_point_residual(uh, tn).second);
    return out;
  }

  Iterate u = uh;  // iterate k = 1
  AAMemory mem;
  mem.capacity = cfg.m;
  FaaState faa;

  for (std::size_t k = 1;; ++k) {
    uh = pdhg_step(u, p, steps);
    auto [gk, gkn] = fixed_point_residual(u, uh);
    if (gkn < cfg.toll) {
      finish(SolveStatus::kResidualTol, u, gkn);
      return out;
    }
    if (i + j >= cfg.max_iters) {
      finish(SolveStatus::kMaxIters, u, gkn);
      return out;
    }
    if (seconds_since(t0) >= cfg.max_wall_seconds) {
      finish(SolveStatus::kTimeout, u, gkn);
      return out;
    }

    Vec du = sub(concat_iterate(u), concat_iterate(u_prev));
    Vec dg = sub(gk, g_prev);
    if (cfg.method == Method::kAaPdhg)
      memory_push(mem, std::move(du), std::move(dg));
    else if (cfg.method == Method::kFaaPdhg)
      faa.push(std::move(du), std::move(dg), cfg.m);

    const std::size_t i_pre = i, j_pre = j;
    bool aa_step = false;
    Iterate u_next;
    if (cfg.method != Method::kPdhg &&
        safeguard_pass(gkn, g0n, i, cfg.safeguard_d, cfg.safeguard_eps)) {
      try {
        Vec cand;
        if (cfg.method == Method::kAaPdhg) {
          cand = aa_apply(mem, cfg.aa, concat_iterate(u), gk);
        } else {
          FilteredMemory fm = build_filtered_memory(faa.e, faa.f, cfg.filter);
          cand = filtered_aa_apply(fm, cfg.aa, concat_iterate(u), gk);
          faa.e = std::move(fm.e);
          faa.f = std::move(fm.f);
        }
        u_next = project_feasible(split_iterate(cand, p.n()), p);
        aa_step = true;
        ++i;
      } catch (const SingularError& err) {
        log_debug(std::string("aa step ") + std::to_string(k) +
                  " failed, taking the plain step: " + err.what());
        u_next = uh;
        ++j;
        ++aa_failures;
      }
    } else {
      u_next = uh;
      ++j;
    }

    const KktMetrics kkt_k = record(k, gkn, aa_step, i_pre, j_pre, u_next);
    if (cfg.kkt_terminate && kkt_k.max() <= cfg.kkt_eps) {
      const Iterate tn = pdhg_step(u_next, p, steps);
      finish(SolveStatus::kKktTol, u_next,
             fixed_point_residual(u_next, tn).second);
      return out;
    }

    u_prev = std::move(u);
    g_prev = std::move(gk);
    u = std::move(u_next);
  }
}

SolveOutput solve(const ProblemData& p, const SolverConfig& cfg) {
  Iterate zero;
  zero.x.assign(std::size_t(p.n()), 0.0);
  zero.y.assign(std::size_t(p.m1() + p.m2()), 0.0);
  return solve(p, cfg, zero);
}

}  // namespace aapdhg
