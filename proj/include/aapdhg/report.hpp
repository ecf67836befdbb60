#pragma once

#include <string>
#include <vector>

#include "aapdhg/lp_model.hpp"
#include "aapdhg/solver.hpp"

namespace aapdhg {

const char* status_name(SolveStatus s);
const char* method_name(Method m);

// Header k,g_norm,step_type,i,j,r_gap,r_primal,r_dual,objective,elapsed_s;
// floats printed with %.17g so rereads are exact.
std::string trajectory_csv(const std::vector<TrajectoryRecord>& records);

// Deterministic key order; numeric fields survive a parse round trip.
std::string summary_json(const SolveResult& result, const SolverConfig& cfg,
                         const ProblemData& p);

}  // namespace aapdhg
