#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "aapdhg/anderson.hpp"
#include "aapdhg/filtering.hpp"
#include "aapdhg/lp_model.hpp"
#include "aapdhg/pdhg_core.hpp"
#include "aapdhg/vec.hpp"

namespace aapdhg {

enum class Method { kPdhg, kAaPdhg, kFaaPdhg };

enum class SolveStatus {
  kResidualTol,      // ||g|| dropped below toll
  kKktTol,           // relative KKT metrics below kkt_eps (opt-in)
  kMaxIters,
  kTimeout,
  kFixedPointStart,  // start point already a fixed point
};

struct SolverConfig {
  Method method = Method::kPdhg;
  std::size_t m = 5;           // memory capacity
  double safeguard_d = 1.0;    // scale D > 0
  double safeguard_eps = 1.0;  // exponent offset > 0
  AAParams aa;
  FilterParams filter;
  double toll = 1e-4;
  double kkt_eps = 1e-4;
  bool kkt_terminate = false;
  std::size_t max_iters = 100000;
  double max_wall_seconds = 3600.0;
  double tau = 0.0;   // <= 0 selects both step sizes by power iteration
  double sigma = 0.0;
};

struct KktMetrics {
  double r_gap = 0.0;
  double r_primal = 0.0;
  double r_dual = 0.0;

  double max() const;
};

struct TrajectoryRecord {
  std::size_t k = 0;
  double g_norm = 0.0;
  bool aa_step = false;  // step taken while leaving iterate k
  std::size_t i = 0;     // counters as checked at iterate k, before stepping
  std::size_t j = 0;
  KktMetrics kkt;        // evaluated at the produced iterate k+1
  double objective = 0.0;
  double elapsed_s = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kMaxIters;
  Iterate u;
  Vec lambda;
  std::size_t iterations = 0;  // equals i + j
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t aa_failures = 0;
  double g_norm = 0.0;
  KktMetrics kkt;
  double objective = 0.0;      // c'x in minimization sense
  StepSizes steps;
  double wall_seconds = 0.0;
};

struct SolveOutput {
  SolveResult result;
  std::vector<TrajectoryRecord> trajectory;
};

// True iff ||g|| <= D ||g0|| (i+1)^-(1+eps); equality passes.
bool safeguard_pass(double g_norm, double g0_norm, std::size_t i, double d,
                    double eps);

// Relative KKT residuals and the bound multiplier lambda = P_Lambda(c - K'y).
// Gap and dual terms involving l (resp. u) sum only over finite entries.
std::pair<KktMetrics, Vec> kkt_metrics(const Iterate& u, const ProblemData& p,
                                       const LambdaSpec& spec);

// tau = sigma = 0.9 / ||K||_2 with the norm from a seeded power iteration;
// explicit positive overrides are honored verbatim; all-zero K gives 1.
StepSizes select_step_sizes(const ProblemData& p, const SolverConfig& cfg);

// Runs the configured method from u0 (projected onto the feasible box/cone
// first). Always records the k=0 row; one more row per completed iteration.
SolveOutput solve(const ProblemData& p, const SolverConfig& cfg,
                  const Iterate& u0);

// Default start: the zero vector projected.
SolveOutput solve(const ProblemData& p, const SolverConfig& cfg);

}  // namespace aapdhg
