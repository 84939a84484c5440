#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rqode/rhs.hpp"

namespace rqode {

// How the mean over a finite population of vectors is obtained.
//   exact:       every member is read once, the true mean is returned.
//   randomized:  median of means over independent uniform index draws.
//   quantum_sim: cost model of an amplitude-estimation device; the returned
//                value is the true mean plus a bounded perturbation, while
//                the charge follows the query count such a device would make.
enum class MeanMode { exact, randomized, quantum_sim };

// Perturbation applied by quantum_sim on top of the true mean.
enum class Perturbation { none, uniform_random, adversarial_sign };

struct MeanRequest {
  long long population = 0;                     // number of members, >= 1
  int dim = 1;                                  // length of each member
  std::function<Vec(long long)> sample;         // member by index, 0-based
  double epsilon1 = 1.0;                        // target sup-norm accuracy
  double delta1 = 0.25;                         // failure budget, in (0, 1/2)
  double bound_g = 1.0;                         // sup-norm bound on members
  MeanMode mode = MeanMode::exact;
  Perturbation perturbation = Perturbation::none;
  uint64_t seed = 0;
};

struct MeanResult {
  Vec estimate;
  long long charged_queries = 0;     // what the cost model bills
  long long actual_evaluations = 0;  // oracle calls actually made
  int repetitions = 0;               // R
  long long draws_per_repetition = 0;  // S (randomized) or billed draws
};

// Midpoints of N equal cells of [0,1]: (2k+1)/(2N), k = 0..N-1.
std::vector<double> midpoint_nodes(long long big_n);

// R = 2*ceil(log2(1/delta1)) + 1, the median width that pushes the
// per-estimate failure probability below delta1.
int repetition_count(double delta1);

// Chebyshev sample size per repetition: ceil(4 G^2 / epsilon1^2).
long long chebyshev_sample_size(double bound_g, double epsilon1);

MeanResult estimate_mean(const MeanRequest& req);

}  // namespace rqode
