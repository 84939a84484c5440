#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rqode/problems.hpp"
#include "rqode/solver.hpp"

namespace rqode {

// One experiment: a problem solved over a grid of n values, possibly with
// repeated seeded runs for dispersion statistics. `config.n` is used by the
// single-run operations; the studies sweep `n_grid` instead.
struct ExperimentSpec {
  std::string problem;
  SolverConfig config;
  std::vector<long long> n_grid;
  int repetitions = 1;
  int samples_per_piece = 8;
  std::string out_path;  // empty: no CSV file written
};

struct ExperimentRow {
  long long n = 0;
  double error = 0.0;
  long long charged_queries = 0;
  long long actual_evaluations = 0;
  double wall_ms = 0.0;
};

struct ErrorStat {
  double rms = 0.0;
  double stddev = 0.0;
  std::vector<double> samples;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

struct StudyResult {
  std::vector<ExperimentRow> rows;
  double fitted = 0.0;   // order for convergence studies, slope for cost
  double target = 0.0;   // schedule exponent the fit is compared against
  bool fit_defined = true;
  bool ledger_verified = true;  // cost studies only; true otherwise
  std::string note;
};

// Sup-norm error of one seeded run against the problem's reference solution.
double single_run_error(const ExperimentSpec& spec, long long n, uint64_t seed);

// Root-mean-square sup error over `repetitions` independently seeded runs at
// n = spec.config.n, with the sample standard deviation. Requires >= 2 reps.
ErrorStat randomized_error(const ExperimentSpec& spec);

// Smallest observed error alpha with empirical P(error > alpha) <= delta over
// `repetitions` seeded runs at n = spec.config.n.
double quantile_error(const ExperimentSpec& spec, double delta);

// Least-squares line through (x_i, y_i).
LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// Error vs n over the grid; fitted order is the negated log-log slope.
// Grid points with error below 100x machine epsilon are dropped; if fewer
// than two survive the order is reported undefined.
StudyResult convergence_study(const ExperimentSpec& spec);

// Charged queries vs n over the grid; also recomputes the ledger of the
// smallest-n run from the schedule formulas and checks it level by level.
StudyResult cost_study(const ExperimentSpec& spec);

// Closed-form per-level cost of one solve, derived from the parameter
// schedule and billing rules alone (no ODE run). Independent check on the
// recursive accounting.
CostLedger predict_ledger(const SolverConfig& config);

// Schema: n,error,charged_queries,actual_evaluations,wall_ms. Header row
// mandatory, LF line endings, shortest round-trip double formatting.
void write_csv(std::ostream& os, const std::vector<ExperimentRow>& rows);
void write_csv_file(const std::string& path, const std::vector<ExperimentRow>& rows);

}  // namespace rqode
