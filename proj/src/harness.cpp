#include "rqode/harness.hpp"

#include <gsl/gsl_fit.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "rqode/mean.hpp"
#include "rqode/rng.hpp"
#include "rqode/schedule.hpp"

namespace rqode {

namespace {

// Grid points whose error sits at rounding-noise scale carry no order
// information.
constexpr double kErrorFloor = 100.0 * std::numeric_limits<double>::epsilon();

const NamedProblem& resolve(const ExperimentSpec& spec) {
  if (spec.samples_per_piece < 2) {
    throw InvalidRequest("samples_per_piece must be at least 2");
  }
  return find_problem(spec.problem);
}

void check_grid(const ExperimentSpec& spec, size_t min_points) {
  if (spec.n_grid.size() < min_points) {
    throw InvalidRequest("n_grid needs at least " + std::to_string(min_points) +
                         " points");
  }
  for (size_t i = 0; i < spec.n_grid.size(); ++i) {
    if (spec.n_grid[i] < 1) throw InvalidRequest("n_grid entries must be >= 1");
    if (i > 0 && spec.n_grid[i] <= spec.n_grid[i - 1]) {
      throw InvalidRequest("n_grid must be strictly increasing");
    }
  }
}

uint64_t run_seed(uint64_t master, long long n, int rep) {
  return mix_seed(mix_seed(master, static_cast<uint64_t>(n)),
                  static_cast<uint64_t>(rep));
}

struct RunOut {
  double error = 0.0;
  CostLedger ledger;
};

RunOut run_once(const NamedProblem& np, const ExperimentSpec& spec,
                long long n, int rep) {
  SolverConfig cfg = spec.config;
  cfg.n = n;
  cfg.seed = run_seed(spec.config.seed, n, rep);
  auto res = solve(np.problem, cfg);
  RunOut out;
  out.ledger = std::move(res.ledger);
  out.error = sup_norm_distance(res.approximation, np.problem.reference,
                                spec.samples_per_piece);
  return out;
}

std::vector<double> error_samples(const ExperimentSpec& spec) {
  const auto& np = resolve(spec);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(spec.repetitions));
  for (int rep = 0; rep < spec.repetitions; ++rep) {
    out.push_back(run_once(np, spec, spec.config.n, rep).error);
  }
  return out;
}

void append_double(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  line += buf;
}

void finish_study(StudyResult& out, const ExperimentSpec& spec, bool order_fit) {
  std::sort(out.rows.begin(), out.rows.end(),
            [](const ExperimentRow& a, const ExperimentRow& b) { return a.n < b.n; });
  std::vector<double> xs, ys;
  for (const auto& row : out.rows) {
    double y = order_fit ? row.error : static_cast<double>(row.charged_queries);
    if (order_fit && y < kErrorFloor) continue;
    xs.push_back(static_cast<double>(row.n));
    ys.push_back(y);
  }
  if (xs.size() < 2) {
    out.fit_defined = false;
    out.fitted = 0.0;
    out.note = "order undefined (errors below floor)";
  } else {
    auto fit = fit_loglog(xs, ys);
    out.fitted = order_fit ? -fit.slope : fit.slope;
  }
  if (!spec.out_path.empty()) write_csv_file(spec.out_path, out.rows);
}

}  // namespace

double single_run_error(const ExperimentSpec& spec, long long n, uint64_t seed) {
  const auto& np = resolve(spec);
  SolverConfig cfg = spec.config;
  cfg.n = n;
  cfg.seed = seed;
  auto res = solve(np.problem, cfg);
  return sup_norm_distance(res.approximation, np.problem.reference,
                           spec.samples_per_piece);
}

ErrorStat randomized_error(const ExperimentSpec& spec) {
  if (spec.repetitions < 2) {
    throw InvalidRequest("randomized_error needs at least 2 repetitions");
  }
  ErrorStat stat;
  stat.samples = error_samples(spec);
  const double count = static_cast<double>(stat.samples.size());
  double sum = 0.0, sumsq = 0.0;
  for (double e : stat.samples) {
    sum += e;
    sumsq += e * e;
  }
  stat.rms = std::sqrt(sumsq / count);
  const double mean = sum / count;
  double var = 0.0;
  for (double e : stat.samples) var += (e - mean) * (e - mean);
  stat.stddev = std::sqrt(var / (count - 1.0));
  return stat;
}

double quantile_error(const ExperimentSpec& spec, double delta) {
  if (spec.repetitions < 1) {
    throw InvalidRequest("quantile_error needs at least 1 repetition");
  }
  if (delta < 0.0 || delta >= 1.0) {
    throw InvalidRequest("quantile level must lie in [0, 1)");
  }
  auto errors = error_samples(spec);
  std::sort(errors.begin(), errors.end());
  const double budget = delta * static_cast<double>(errors.size());
  for (size_t i = 0; i < errors.size(); ++i) {
    auto past = std::upper_bound(errors.begin(), errors.end(), errors[i]);
    const auto greater = static_cast<double>(errors.end() - past);
    if (greater <= budget) return errors[i];
  }
  return errors.back();
}

LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidRequest("log-log fit needs at least 2 matching points");
  }
  std::vector<double> lx(x.size()), ly(y.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw InvalidRequest("log-log fit needs positive data");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double c0 = 0.0, c1 = 0.0, cov00 = 0.0, cov01 = 0.0, cov11 = 0.0, sumsq = 0.0;
  gsl_fit_linear(lx.data(), 1, ly.data(), 1, lx.size(), &c0, &c1, &cov00,
                 &cov01, &cov11, &sumsq);
  return LinearFit{c1, c0};
}

StudyResult convergence_study(const ExperimentSpec& spec) {
  const auto& np = resolve(spec);
  check_grid(spec, 3);
  const int runs = spec.config.mean_mode == MeanMode::exact
                       ? 1
                       : std::max(1, spec.repetitions);
  StudyResult out;
  for (long long n : spec.n_grid) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentRow row;
    row.n = n;
    double sumsq = 0.0;
    for (int rep = 0; rep < runs; ++rep) {
      auto one = run_once(np, spec, n, rep);
      sumsq += one.error * one.error;
      if (rep == 0) {
        row.charged_queries = one.ledger.charged_total();
        row.actual_evaluations = one.ledger.actual_total();
      }
    }
    row.error = std::sqrt(sumsq / static_cast<double>(runs));
    const auto t1 = std::chrono::steady_clock::now();
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    out.rows.push_back(row);
  }
  out.target = alpha_exponent(spec.config.level, spec.config.q(), spec.config.setting);
  finish_study(out, spec, true);
  return out;
}

StudyResult cost_study(const ExperimentSpec& spec) {
  const auto& np = resolve(spec);
  check_grid(spec, 3);
  StudyResult out;
  CostLedger smallest_measured;
  for (long long n : spec.n_grid) {
    const auto t0 = std::chrono::steady_clock::now();
    auto one = run_once(np, spec, n, 0);
    const auto t1 = std::chrono::steady_clock::now();
    if (out.rows.empty()) smallest_measured = one.ledger;
    ExperimentRow row;
    row.n = n;
    row.error = one.error;
    row.charged_queries = one.ledger.charged_total();
    row.actual_evaluations = one.ledger.actual_total();
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    out.rows.push_back(row);
  }
  out.target = static_cast<double>(
      beta_exponent(spec.config.level, spec.config.setting));

  SolverConfig smallest_cfg = spec.config;
  smallest_cfg.n = spec.n_grid.front();
  const CostLedger predicted = predict_ledger(smallest_cfg);
  out.ledger_verified =
      predicted.by_level.size() == smallest_measured.by_level.size();
  for (size_t i = 0; out.ledger_verified && i < predicted.by_level.size(); ++i) {
    const auto& p = predicted.by_level[i];
    const auto& m = smallest_measured.by_level[i];
    out.ledger_verified = p.charged_queries == m.charged_queries &&
                          p.actual_evaluations == m.actual_evaluations &&
                          p.derivative_evals == m.derivative_evals;
  }
  if (!out.ledger_verified) {
    out.note = "ledger mismatch against schedule formulas at n = " +
               std::to_string(spec.n_grid.front());
  }
  finish_study(out, spec, false);
  return out;
}

CostLedger predict_ledger(const SolverConfig& config) {
  SolverConfig cfg = config;
  if (cfg.top_level == 0) cfg.top_level = cfg.level;
  const double delta1 =
      cfg.level >= 2 ? delta1_of(cfg.delta, cfg.n, cfg.top_level, cfg.setting)
                     : cfg.delta;

  CostLedger ledger;
  ledger.by_level.resize(static_cast<size_t>(cfg.level));

  // Per-level charges of a single level-s run with basic parameter nn.
  auto account = [&](auto&& self, int s, long long nn) -> std::vector<LevelCost> {
    if (s == 1) {
      const long long calls = nn * (cfg.r + 2);
      return {LevelCost{calls, calls, calls}};
    }
    const auto par = params_for_level(nn, s - 1, cfg.setting);
    const auto child = self(self, s - 1, par.m);
    std::vector<LevelCost> out(static_cast<size_t>(s));
    for (size_t i = 0; i < child.size(); ++i) {
      out[i].charged_queries = nn * child[i].charged_queries;
      out[i].actual_evaluations = nn * child[i].actual_evaluations;
      out[i].derivative_evals = nn * child[i].derivative_evals;
    }
    const long long cells = par.m * par.l;
    const long long pool = cells * par.big_n;
    const long long deriv = cells * gauss_points_for(cfg.r) * (cfg.r + 1);
    long long charged = 0, actual = 0;
    switch (cfg.mean_mode) {
      case MeanMode::exact:
        charged = actual = pool;
        break;
      case MeanMode::randomized: {
        const long long size = chebyshev_sample_size(cfg.bound_g, par.epsilon1);
        if (size >= pool) {
          charged = actual = pool;
        } else {
          charged = actual = repetition_count(delta1) * size;
        }
        break;
      }
      case MeanMode::quantum_sim: {
        const auto per_rep = std::min(
            pool, static_cast<long long>(snapped_ceil(1.0 / par.epsilon1)));
        charged = repetition_count(delta1) * per_rep;
        actual = pool;
        break;
      }
    }
    auto& top = out[static_cast<size_t>(s - 1)];
    top.charged_queries = nn * (deriv + charged);
    top.actual_evaluations = nn * (deriv + actual);
    top.derivative_evals = nn * deriv;
    return out;
  };

  ledger.by_level = account(account, cfg.level, cfg.n);
  return ledger;
}

void write_csv(std::ostream& os, const std::vector<ExperimentRow>& rows) {
  os << "n,error,charged_queries,actual_evaluations,wall_ms\n";
  for (const auto& row : rows) {
    std::string line = std::to_string(row.n);
    line += ',';
    append_double(line, row.error);
    line += ',';
    line += std::to_string(row.charged_queries);
    line += ',';
    line += std::to_string(row.actual_evaluations);
    line += ',';
    append_double(line, row.wall_ms);
    line += '\n';
    os << line;
  }
}

void write_csv_file(const std::string& path, const std::vector<ExperimentRow>& rows) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidRequest("cannot open output file: " + path);
  write_csv(os, rows);
}

}  // namespace rqode
