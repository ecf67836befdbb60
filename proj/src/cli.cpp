#include "aapdhg/cli.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "aapdhg/errors.hpp"
#include "aapdhg/logging.hpp"
#include "aapdhg/lp_model.hpp"
#include "aapdhg/report.hpp"
#include "aapdhg/solver.hpp"

namespace fs = std::filesystem;

namespace aapdhg {
namespace {

Method parse_method(const std::string& s) {
  if (s == "pdhg") return Method::kPdhg;
  if (s == "aa-pdhg") return Method::kAaPdhg;
  if (s == "faa-pdhg") return Method::kFaaPdhg;
  throw InputError("unknown method '" + s + "' (pdhg | aa-pdhg | faa-pdhg)");
}

LogLevel parse_level(const std::string& s) {
  if (s == "error") return LogLevel::kError;
  if (s == "warn") return LogLevel::kWarn;
  if (s == "info") return LogLevel::kInfo;
  if (s == "debug") return LogLevel::kDebug;
  throw InputError("unknown log level '" + s + "'");
}

int exit_code(SolveStatus st) {
  switch (st) {
    case SolveStatus::kResidualTol:
    case SolveStatus::kKktTol:
    case SolveStatus::kFixedPointStart:
      return 0;
    case SolveStatus::kMaxIters:
    case SolveStatus::kTimeout:
      return 2;
  }
  return 2;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open for writing: " + path.string());
  f << content;
  if (!f) throw InputError("short write: " + path.string());
}

int run_one(const ProblemData& p, const SolverConfig& cfg, const fs::path& dir,
            bool announce) {
  const SolveOutput so = solve(p, cfg);
  fs::create_directories(dir);
  write_file(dir / "trajectory.csv", trajectory_csv(so.trajectory));
  write_file(dir / "summary.json", summary_json(so.result, cfg, p));
  if (announce) {
    std::printf("%s: status=%s iterations=%zu g=%.3e objective=%.10g -> %s\n",
                method_name(cfg.method), status_name(so.result.status),
                so.result.iterations, so.result.g_norm, so.result.objective,
                dir.string().c_str());
  }
  return exit_code(so.result.status);
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

struct SweepCase {
  SolverConfig cfg;
  std::string name;
};

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"matrix-free first-order LP solver: PDHG, AA-PDHG, FAA-PDHG"};
  app.set_config("--config", "", "key=value file; command-line flags win");

  std::string instance, method = "pdhg", out_dir = "out", log_level = "warn";
  SolverConfig base;
  std::vector<double> d_hat;
  std::vector<double> sweep_d, sweep_eps, sweep_kappa;
  std::vector<std::size_t> sweep_m;

  app.add_option("--instance", instance, "MPS instance file")->required();
  app.add_option("--method", method, "pdhg | aa-pdhg | faa-pdhg");
  app.add_option("--out", out_dir, "output directory (trajectory.csv, summary.json)");
  app.add_option("--m", base.m, "acceleration memory capacity");
  auto* opt_d = app.add_option("--D", base.safeguard_d, "safeguard scale");
  auto* opt_eps = app.add_option("--eps", base.safeguard_eps, "safeguard exponent offset");
  app.add_option("--beta", base.aa.beta, "damping in (0,1]");
  app.add_option("--d-hat", d_hat, "diagonal scaling, comma separated, one entry per iterate coordinate")
      ->delimiter(',');
  app.add_option("--eta", base.aa.eta, "Tikhonov weight relative to ||dG||_F^2");
  app.add_option("--c-s", base.filter.c_s, "angle filter sine threshold");
  auto* opt_kappa = app.add_option("--kappa-bar", base.filter.kappa_bar, "length filter conditioning cap");
  app.add_option("--toll", base.toll, "fixed-point residual tolerance");
  app.add_option("--kkt-eps", base.kkt_eps, "relative KKT tolerance");
  app.add_flag("--kkt-terminate", base.kkt_terminate, "also stop when all KKT metrics reach kkt-eps");
  app.add_option("--max-iters", base.max_iters, "iteration budget");
  app.add_option("--max-wall-seconds", base.max_wall_seconds, "wall-clock budget");
  app.add_option("--tau", base.tau, "primal step override (needs --sigma)");
  app.add_option("--sigma", base.sigma, "dual step override (needs --tau)");
  app.add_option("--sweep-D", sweep_d, "run once per listed safeguard scale")->delimiter(',');
  app.add_option("--sweep-eps", sweep_eps, "run once per listed exponent offset")->delimiter(',');
  app.add_option("--sweep-m", sweep_m, "run once per listed memory capacity")->delimiter(',');
  app.add_option("--sweep-kappa-bar", sweep_kappa, "run once per listed conditioning cap")->delimiter(',');
  app.add_option("--log-level", log_level, "error | warn | info | debug");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    set_log_level(parse_level(log_level));
    base.method = parse_method(method);
    base.aa.d_hat = d_hat;

    const RawLP raw = parse_mps_file(instance);
    const ProblemData p = to_standard_form(raw);
    const std::size_t dim = std::size_t(p.n() + p.m1() + p.m2());
    if (!d_hat.empty() && d_hat.size() != dim)
      throw InputError("--d-hat needs " + std::to_string(dim) + " entries");

    const bool sweeping = !sweep_d.empty() || !sweep_eps.empty() ||
                          !sweep_m.empty() || !sweep_kappa.empty();
    if (!sweeping) return run_one(p, base, out_dir, true);

    if (!sweep_d.empty() && opt_d->count() > 0)
      throw InputError("--sweep-D conflicts with --D");
    if (!sweep_eps.empty() && opt_eps->count() > 0)
      throw InputError("--sweep-eps conflicts with --eps");
    if (!sweep_m.empty() && app.count("--m") > 0)
      throw InputError("--sweep-m conflicts with --m");
    if (!sweep_kappa.empty() && opt_kappa->count() > 0)
      throw InputError("--sweep-kappa-bar conflicts with --kappa-bar");

    std::vector<SweepCase> cases;
    for (std::size_t id = 0; id < std::max<std::size_t>(1, sweep_d.size()); ++id)
      for (std::size_t ie = 0; ie < std::max<std::size_t>(1, sweep_eps.size()); ++ie)
        for (std::size_t im = 0; im < std::max<std::size_t>(1, sweep_m.size()); ++im)
          for (std::size_t ik = 0; ik < std::max<std::size_t>(1, sweep_kappa.size()); ++ik) {
            SweepCase sc{base, ""};
            std::string name;
            if (!sweep_d.empty()) {
              sc.cfg.safeguard_d = sweep_d[id];
              name += "D" + short_num(sweep_d[id]);
            }
            if (!sweep_eps.empty()) {
              sc.cfg.safeguard_eps = sweep_eps[ie];
              name += std::string(name.empty() ? "" : "_") + "eps" + short_num(sweep_eps[ie]);
            }
            if (!sweep_m.empty()) {
              sc.cfg.m = sweep_m[im];
              name += std::string(name.empty() ? "" : "_") + "m" + std::to_string(sweep_m[im]);
            }
            if (!sweep_kappa.empty()) {
              sc.cfg.filter.kappa_bar = sweep_kappa[ik];
              name += std::string(name.empty() ? "" : "_") + "kappa" + short_num(sweep_kappa[ik]);
            }
            sc.name = name;
            cases.push_back(std::move(sc));
          }

    std::size_t workers = 1;
    if (const char* env = std::getenv("AAPDHG_SWEEP_WORKERS")) {
      const long parsed = std::strtol(env, nullptr, 10);
      if (parsed > 0) workers = std::size_t(parsed);
    }
    workers = std::min(workers, cases.size());

    std::vector<int> codes(cases.size(), 1);
    if (workers <= 1) {
      for (std::size_t idx = 0; idx < cases.size(); ++idx)
        codes[idx] = run_one(p, cases[idx].cfg, fs::path(out_dir) / cases[idx].name, true);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t idx = next.fetch_add(1); idx < cases.size();
               idx = next.fetch_add(1)) {
            try {
              codes[idx] = run_one(p, cases[idx].cfg,
                                   fs::path(out_dir) / cases[idx].name, false);
            } catch (const std::exception& e) {
              log_msg(LogLevel::kError, std::string("sweep case ") +
                                            cases[idx].name + ": " + e.what());
              codes[idx] = 1;
            }
          }
        });
      }
      for (std::thread& t : pool) t.join();
      for (std::size_t idx = 0; idx < cases.size(); ++idx)
        std::printf("case %s: exit %d\n", cases[idx].name.c_str(), codes[idx]);
    }
    int worst = 0;
    for (int code : codes) worst = std::max(worst, code);
    return worst;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace aapdhg
