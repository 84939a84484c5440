#pragma once

#include <cstdint>
#include <vector>

#include "rqode/mean.hpp"
#include "rqode/piecewise.hpp"
#include "rqode/problems.hpp"
#include "rqode/schedule.hpp"

namespace rqode {

struct SolverConfig {
  int r = 1;           // truncation degree of the local maps of f
  double rho = 1.0;    // declared Holder exponent; q = r + rho
  Setting setting = Setting::rand;
  int level = 1;       // s: which member of the family to run
  int top_level = 0;   // depth the failure budget was split for; 0 = level
  long long n = 2;     // basic parameter
  double delta = 0.25;  // overall failure budget
  MeanMode mean_mode = MeanMode::exact;
  Perturbation perturbation = Perturbation::none;
  double bound_g = 1.0;  // a priori sup bound on residual samples
  uint64_t seed = 0;

  double q() const { return static_cast<double>(r) + rho; }
};

// Cost split by algorithm level; entry 0 is level 1, the Taylor base.
// charged_queries bills classical derivative evaluations plus each
// estimator's model charge; actual_evaluations differs only where an
// estimator's model charge deviates from the oracle calls it truly made.
struct LevelCost {
  long long charged_queries = 0;
  long long actual_evaluations = 0;
  long long derivative_evals = 0;
};

struct CostLedger {
  std::vector<LevelCost> by_level;
  long long charged_total() const;
  long long actual_total() const;
  long long derivative_total() const;
};

struct SolveResult {
  PiecewisePoly approximation;
  CostLedger ledger;
  long long estimator_invocations = 0;
  double max_residual_norm = 0.0;  // largest |g| over all samples drawn
};

struct TaylorStep {
  Vec y_next;
  VectorJet coeffs;  // local solution expansion, degree r + 1
};

// One base step: expand the local solution to degree r+1 about y, advance by
// h. y_next is the Horner value of the expansion at h, bit-identical to
// evaluating the stored piece at its right endpoint.
TaylorStep taylor_step(const RhsProgram& f, const Vec& y, double h, int r);

// Piece count of a level-s run with basic parameter n.
long long pieces_for(long long n, int s, Setting setting);

SolveResult solve(const IVProblem& problem, const SolverConfig& cfg);

}  // namespace rqode
