#pragma once

#include "rqode/errors.hpp"

namespace rqode {

// Cost model of the inner mean estimator: median-of-means sampling (rand) or
// a fixed-accuracy oracle with quantum-style query charging (quant).
enum class Setting { rand, quant };

// Parameters used when one level is built on top of the previous one with
// basic parameter n: the child runs with basic parameter m, each macro step
// is subdivided into m*l equal cells, and each cell mean is taken over big_n
// knots with estimator accuracy epsilon1 = 1/big_n.
struct LevelParams {
  long long m = 1;
  long long l = 1;
  long long big_n = 1;
  double epsilon1 = 1.0;
};

LevelParams params_for_level(long long n, int s, Setting setting);

// Per-estimator failure budget so that a whole depth-k run with basic
// parameter n succeeds with probability at least 1 - delta.
double delta1_of(double delta, long long n, int k, Setting setting);

// Error exponent of the level-s method with smoothness exponent q = r + rho.
double alpha_exponent(int s, double q, Setting setting);

// Cost exponent of the level-s method.
long long beta_exponent(int s, Setting setting);

// Number of estimator invocations performed by a level-s run with basic
// parameter n. Satisfies psi(n, 1) = 0 and psi(n, s+1) = n * psi(m, s) + n
// with m from params_for_level.
long long psi_count(long long n, int s, Setting setting);

// Smallest recursion depth whose error-per-cost exponent is within gamma/2
// (rand) or gamma (quant) of the family limit.
int choose_k(double gamma, Setting setting);

struct PlanRequest {
  double epsilon = 1e-3;   // target error
  double gamma = 0.5;      // exponent slack
  double cap_K = 1.0;      // scale of the admissible error bound
  double cbar = 1.0;       // scale of the deterministic error constant
  double q = 2.0;          // smoothness exponent r + rho
  Setting setting = Setting::rand;
  double delta = 0.25;     // failure budget; consumed as given in quant mode
};

struct PlanResult {
  int k = 1;
  long long n = 1;
  double delta = 0.0;
  double alpha_k = 0.0;
};

// Picks (k, n, delta) so the level-k method reaches error epsilon. In rand
// mode delta = 3 eps^2 / (4 K^2); InvalidPlan if that cannot stay below 1/2.
PlanResult plan_for_epsilon(const PlanRequest& req);

// Integer power with overflow detection.
long long ipow_ll(long long base, int exp);

// ceil with a small relative snap so values a rounding error above an integer
// do not get bumped to the next one.
double snapped_ceil(double x);

}  // namespace rqode
