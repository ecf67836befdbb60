#include "aapdhg/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace aapdhg {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kResidualTol: return "RESIDUAL_TOL";
    case SolveStatus::kKktTol: return "KKT_TOL";
    case SolveStatus::kMaxIters: return "MAX_ITERS";
    case SolveStatus::kTimeout: return "TIMEOUT";
    case SolveStatus::kFixedPointStart: return "FIXED_POINT_START";
  }
  return "UNKNOWN";
}

const char* method_name(Method m) {
  switch (m) {
    case Method::kPdhg: return "pdhg";
    case Method::kAaPdhg: return "aa-pdhg";
    case Method::kFaaPdhg: return "faa-pdhg";
  }
  return "unknown";
}

std::string trajectory_csv(const std::vector<TrajectoryRecord>& records) {
  std::string out = "k,g_norm,step_type,i,j,r_gap,r_primal,r_dual,objective,elapsed_s\n";
  for (const TrajectoryRecord& r : records) {
    out += std::to_string(r.k);
    out += ',';
    out += fmt(r.g_norm);
    out += ',';
    out += r.aa_step ? "AA" : "PDHG";
    out += ',';
    out += std::to_string(r.i);
    out += ',';
    out += std::to_string(r.j);
    out += ',';
    out += fmt(r.kkt.r_gap);
    out += ',';
    out += fmt(r.kkt.r_primal);
    out += ',';
    out += fmt(r.kkt.r_dual);
    out += ',';
    out += fmt(r.objective);
    out += ',';
    out += fmt(r.elapsed_s);
    out += '\n';
  }
  return out;
}

std::string summary_json(const SolveResult& result, const SolverConfig& cfg,
                         const ProblemData& p) {
  nlohmann::ordered_json doc;
  doc["instance"] = p.name;
  doc["method"] = method_name(cfg.method);
  doc["status"] = status_name(result.status);
  doc["iterations"] = result.iterations;
  doc["i"] = result.i;
  doc["j"] = result.j;
  doc["aa_failures"] = result.aa_failures;
  doc["final_g_norm"] = result.g_norm;
  doc["r_gap"] = result.kkt.r_gap;
  doc["r_primal"] = result.kkt.r_primal;
  doc["r_dual"] = result.kkt.r_dual;
  doc["objective"] = result.objective;
  if (p.maximize) doc["objective_original_sense"] = -result.objective;
  doc["tau"] = result.steps.tau;
  doc["sigma"] = result.steps.sigma;
  doc["wall_seconds"] = result.wall_seconds;

  nlohmann::ordered_json conf;
  conf["m"] = cfg.m;
  conf["D"] = cfg.safeguard_d;
  conf["eps"] = cfg.safeguard_eps;
  conf["beta"] = cfg.aa.beta;
  conf["eta"] = cfg.aa.eta;
  conf["d_hat"] = cfg.aa.d_hat.empty()
                      ? nlohmann::ordered_json("identity")
                      : nlohmann::ordered_json(cfg.aa.d_hat);
  conf["c_s"] = cfg.filter.c_s;
  conf["kappa_bar"] = cfg.filter.kappa_bar;
  conf["toll"] = cfg.toll;
  conf["kkt_eps"] = cfg.kkt_eps;
  conf["kkt_terminate"] = cfg.kkt_terminate;
  conf["max_iters"] = cfg.max_iters;
  conf["max_wall_seconds"] = cfg.max_wall_seconds;
  doc["config"] = std::move(conf);

  return doc.dump(2) + "\n";
}

}  // namespace aapdhg
