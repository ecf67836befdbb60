#pragma once

#include "aapdhg/lp_model.hpp"
#include "aapdhg/vec.hpp"

namespace aapdhg {

enum class OracleStatus { kOptimal, kInfeasible, kUnbounded };

struct OracleResult {
  OracleStatus status = OracleStatus::kInfeasible;
  Vec x;                   // a minimizing vertex when optimal
  double objective = 0.0;  // minimization sense
};

// Brute-force ground truth for tiny instances: enumerates basis subsets of
// the constraint rows (equalities, inequalities, finite bounds), keeps the
// feasible vertex with the smallest objective, and certifies unboundedness
// through improving recession directions. Ties resolved toward the
// lexicographically smallest vertex. Requires n <= 6 and at most 24 rows;
// larger instances throw InputError.
OracleResult solve_tiny(const ProblemData& p);

}  // namespace aapdhg
