#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rqode/errors.hpp"
#include "rqode/harness.hpp"
#include "rqode/problems.hpp"
#include "rqode/schedule.hpp"
#include "rqode/solver.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string problem = "exp_growth";
  std::string setting = "rand";
  int level = 1;
  long long n = 2;
  std::vector<long long> n_grid;
  int reps = 2;
  std::string mean_mode = "exact";
  std::string perturbation = "none";
  int r = 1;
  double rho = 1.0;
  double gamma = 0.5;
  double delta = 0.25;
  double epsilon = 1e-3;
  double bound_g = -1.0;  // negative: take the catalog value for the problem
  uint64_t seed = 0;
  std::string out;
  double cap_K = 1.0;
  double cbar = 1.0;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config_path,
                  "key=value file with defaults; explicit flags override it");
  cmd->add_option("--problem", opt.problem, "problem from the built-in catalog");
  cmd->add_option("--setting", opt.setting, "estimator cost model")
      ->check(CLI::IsMember({"rand", "quant"}));
  cmd->add_option("--level", opt.level, "recursion depth");
  cmd->add_option("--n", opt.n, "basic grid parameter");
  cmd->add_option("--n-grid", opt.n_grid, "grid of n values for studies")
      ->delimiter(',');
  cmd->add_option("--reps", opt.reps, "repetitions for dispersion statistics");
  cmd->add_option("--mean-mode", opt.mean_mode, "inner mean estimator")
      ->check(CLI::IsMember({"exact", "randomized", "quantum-sim"}));
  cmd->add_option("--perturbation", opt.perturbation,
                  "perturbation model for quantum-sim estimates")
      ->check(CLI::IsMember({"none", "uniform", "adversarial"}));
  cmd->add_option("--r", opt.r, "Taylor degree of the local models");
  cmd->add_option("--rho", opt.rho, "Holder exponent of the top derivative");
  cmd->add_option("--gamma", opt.gamma, "exponent slack for the planner");
  cmd->add_option("--delta", opt.delta, "global failure budget");
  cmd->add_option("--epsilon", opt.epsilon, "target error for the planner");
  cmd->add_option("--bound-g", opt.bound_g,
                  "bound on scaled residual samples (default: catalog value)");
  cmd->add_option("--seed", opt.seed, "master seed");
  cmd->add_option("--out", opt.out, "output CSV path");
  cmd->add_option("--K", opt.cap_K, "error-bound scale for the planner");
  cmd->add_option("--cbar", opt.cbar, "error constant scale for the planner");
}

rqode::Setting to_setting(const std::string& s) {
  return s == "quant" ? rqode::Setting::quant : rqode::Setting::rand;
}

rqode::MeanMode to_mode(const std::string& s) {
  if (s == "randomized") return rqode::MeanMode::randomized;
  if (s == "quantum-sim") return rqode::MeanMode::quantum_sim;
  return rqode::MeanMode::exact;
}

rqode::Perturbation to_perturbation(const std::string& s) {
  if (s == "uniform") return rqode::Perturbation::uniform_random;
  if (s == "adversarial") return rqode::Perturbation::adversarial_sign;
  return rqode::Perturbation::none;
}

rqode::ExperimentSpec build_spec(const Options& opt) {
  rqode::ExperimentSpec spec;
  spec.problem = opt.problem;
  spec.config.r = opt.r;
  spec.config.rho = opt.rho;
  spec.config.setting = to_setting(opt.setting);
  spec.config.level = opt.level;
  spec.config.n = opt.n;
  spec.config.delta = opt.delta;
  spec.config.mean_mode = to_mode(opt.mean_mode);
  spec.config.perturbation = to_perturbation(opt.perturbation);
  spec.config.seed = opt.seed;
  spec.config.bound_g =
      opt.bound_g > 0.0 ? opt.bound_g : rqode::find_problem(opt.problem).bound_g;
  spec.n_grid = opt.n_grid;
  spec.repetitions = opt.reps;
  spec.out_path = opt.out;
  return spec;
}

void print_rows(const std::vector<rqode::ExperimentRow>& rows) {
  std::printf("%8s %14s %16s %16s %10s\n", "n", "error", "charged", "actual",
              "wall_ms");
  for (const auto& row : rows) {
    std::printf("%8lld %14.6g %16lld %16lld %10.2f\n", row.n, row.error,
                row.charged_queries, row.actual_evaluations, row.wall_ms);
  }
}

int run_solve(const Options& opt) {
  auto spec = build_spec(opt);
  const auto& np = rqode::find_problem(opt.problem);
  auto res = rqode::solve(np.problem, spec.config);
  std::printf("problem      %s (%s)\n", np.name.c_str(), np.note.c_str());
  std::printf("setting      %s, level %d, n %lld, r %d, rho %g\n",
              opt.setting.c_str(), opt.level, opt.n, opt.r, opt.rho);
  std::printf("pieces       %lld (degree %d)\n", res.approximation.pieces(),
              res.approximation.degree());
  if (np.problem.reference) {
    const double err = rqode::sup_norm_distance(res.approximation,
                                                np.problem.reference, 8);
    std::printf("sup error    %.6g\n", err);
  }
  for (size_t i = 0; i < res.ledger.by_level.size(); ++i) {
    const auto& lc = res.ledger.by_level[i];
    std::printf("level %zu      charged %lld, actual %lld, derivative %lld\n",
                i + 1, lc.charged_queries, lc.actual_evaluations,
                lc.derivative_evals);
  }
  std::printf("totals       charged %lld, actual %lld\n",
              res.ledger.charged_total(), res.ledger.actual_total());
  std::printf("estimators   %lld invocations, max residual sample %.6g\n",
              res.estimator_invocations, res.max_residual_norm);
  if (!opt.out.empty()) {
    std::ofstream os(opt.out, std::ios::binary);
    if (!os) throw rqode::InvalidRequest("cannot open output file: " + opt.out);
    res.approximation.write_csv(os);
    std::printf("coefficients written to %s\n", opt.out.c_str());
  }
  return 0;
}

int run_converge(const Options& opt) {
  auto spec = build_spec(opt);
  auto study = rqode::convergence_study(spec);
  print_rows(study.rows);
  if (study.fit_defined) {
    std::printf("fitted order %.4f (target exponent %.4f)\n", study.fitted,
                study.target);
  } else {
    std::printf("%s\n", study.note.c_str());
  }
  if (!opt.out.empty()) std::printf("table written to %s\n", opt.out.c_str());
  return 0;
}

int run_cost(const Options& opt) {
  auto spec = build_spec(opt);
  auto study = rqode::cost_study(spec);
  print_rows(study.rows);
  if (study.fit_defined) {
    std::printf("fitted cost slope %.4f (target exponent %.4f)\n", study.fitted,
                study.target);
  }
  std::printf("ledger check %s\n",
              study.ledger_verified ? "ok (schedule formulas reproduced)"
                                    : study.note.c_str());
  if (!opt.out.empty()) std::printf("table written to %s\n", opt.out.c_str());
  return 0;
}

int run_plan(const Options& opt) {
  rqode::PlanRequest req;
  req.epsilon = opt.epsilon;
  req.gamma = opt.gamma;
  req.cap_K = opt.cap_K;
  req.cbar = opt.cbar;
  req.q = static_cast<double>(opt.r) + opt.rho;
  req.setting = to_setting(opt.setting);
  req.delta = opt.delta;
  auto plan = rqode::plan_for_epsilon(req);
  std::printf("depth k      %d (alpha_k %.6g)\n", plan.k, plan.alpha_k);
  std::printf("n            %lld\n", plan.n);
  std::printf("delta        %.6g\n", plan.delta);
  return 0;
}

std::string trimmed(const std::string& s) {
  const char* ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// Turns key=value lines into "--key value" argument pairs, skipping keys the
// command line already sets so that explicit flags win.
std::vector<std::string> config_args(const std::string& path,
                                     const std::vector<std::string>& given) {
  std::ifstream in(path);
  if (!in) throw rqode::InvalidRequest("cannot read config file: " + path);
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string entry = trimmed(line);
    if (entry.empty() || entry[0] == '#') continue;
    const auto eq = entry.find('=');
    const std::string key = eq == std::string::npos ? std::string()
                                                    : trimmed(entry.substr(0, eq));
    if (key.empty()) {
      throw rqode::InvalidRequest("config line " + std::to_string(lineno) +
                                  " is not key=value: " + entry);
    }
    const std::string flag = "--" + key;
    const bool overridden =
        std::any_of(given.begin(), given.end(), [&](const std::string& arg) {
          return arg == flag || arg.rfind(flag + "=", 0) == 0;
        });
    if (!overridden) {
      out.push_back(flag);
      out.push_back(trimmed(entry.substr(eq + 1)));
    }
  }
  return out;
}

// Inserts the config-file arguments right after the subcommand token.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  const auto extra = config_args(path, args);
  auto pos = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return a.rfind("--", 0) != 0;
  });
  if (pos != args.end()) ++pos;
  args.insert(pos, extra.begin(), extra.end());
  return args;
}

int run_exponents(const Options& opt) {
  const auto setting = to_setting(opt.setting);
  const double q = static_cast<double>(opt.r) + opt.rho;
  std::printf("%4s %12s %8s %12s\n", "s", "alpha_s", "beta_s", "alpha/beta");
  for (int s = 1; s <= opt.level; ++s) {
    const double alpha = rqode::alpha_exponent(s, q, setting);
    const auto beta = rqode::beta_exponent(s, setting);
    std::printf("%4d %12.4f %8lld %12.6f\n", s, alpha, beta,
                alpha / static_cast<double>(beta));
  }
  const double limit = setting == rqode::Setting::rand ? q + 0.5 : q + 1.0;
  std::printf("limit of alpha/beta: %.6f\n", limit);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recursive sampling-based ODE solver with query accounting"};
  app.require_subcommand(1);

  Options o_solve, o_conv, o_cost, o_plan, o_exp;
  o_exp.level = 5;
  auto* c_solve =
      app.add_subcommand("solve", "run one solve, report error and cost");
  add_common(c_solve, o_solve);
  auto* c_conv =
      app.add_subcommand("converge", "error vs n study with a log-log fit");
  add_common(c_conv, o_conv);
  auto* c_cost =
      app.add_subcommand("cost", "charged queries vs n study with a fit");
  add_common(c_cost, o_cost);
  auto* c_plan = app.add_subcommand(
      "plan", "choose depth, n and failure budget for a target error");
  add_common(c_plan, o_plan);
  auto* c_exp = app.add_subcommand(
      "exponents", "error and cost exponent table for levels 1..level");
  add_common(c_exp, o_exp);

  std::vector<std::string> args;
  args.reserve(static_cast<size_t>(argc));
  args.emplace_back(argv[0]);
  try {
    auto merged = merge_config({argv + 1, argv + argc});
    args.insert(args.end(), merged.begin(), merged.end());
  } catch (const rqode::InvalidSpec& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return 2;
  }
  std::vector<const char*> cargs;
  cargs.reserve(args.size());
  for (const auto& a : args) cargs.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_solve->parsed()) return run_solve(o_solve);
    if (c_conv->parsed()) return run_converge(o_conv);
    if (c_cost->parsed()) return run_cost(o_cost);
    if (c_plan->parsed()) return run_plan(o_plan);
    if (c_exp->parsed()) return run_exponents(o_exp);
  } catch (const rqode::InvalidSpec& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return 2;
  } catch (const rqode::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
