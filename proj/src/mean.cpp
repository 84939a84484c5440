#include "rqode/mean.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "rqode/errors.hpp"
#include "rqode/rng.hpp"
#include "rqode/schedule.hpp"

namespace rqode {
namespace {

Vec draw_sample(const MeanRequest& req, long long idx) {
  Vec v;
  try {
    v = req.sample(idx);
  } catch (const std::exception& e) {
    throw OracleFailure("sample " + std::to_string(idx) + ": " + e.what());
  }
  if (static_cast<int>(v.size()) != req.dim) {
    throw OracleFailure("sample " + std::to_string(idx) + " has " +
                        std::to_string(v.size()) + " components, expected " +
                        std::to_string(req.dim));
  }
  return v;
}

// Single shared path: exact mode, the quantum cost model, and the
// full-population fallback of the randomized mode must agree bitwise.
// spread, when given, receives max - min per component.
Vec population_mean(const MeanRequest& req, Vec* spread = nullptr) {
  Vec sum(req.dim, 0.0);
  Vec lo(req.dim, 0.0), hi(req.dim, 0.0);
  for (long long i = 0; i < req.population; ++i) {
    Vec v = draw_sample(req, i);
    for (int c = 0; c < req.dim; ++c) {
      sum[c] += v[c];
      if (i == 0 || v[c] < lo[c]) lo[c] = v[c];
      if (i == 0 || v[c] > hi[c]) hi[c] = v[c];
    }
  }
  for (int c = 0; c < req.dim; ++c) sum[c] /= static_cast<double>(req.population);
  if (spread != nullptr) {
    spread->resize(static_cast<size_t>(req.dim));
    for (int c = 0; c < req.dim; ++c) (*spread)[c] = hi[c] - lo[c];
  }
  return sum;
}

void validate_common(const MeanRequest& req) {
  if (req.population < 1)
    throw InvalidRequest("mean: population must be >= 1, got " +
                         std::to_string(req.population));
  if (req.dim < 1)
    throw InvalidRequest("mean: dim must be >= 1, got " + std::to_string(req.dim));
  if (!req.sample) throw InvalidRequest("mean: sample oracle not set");
}

void validate_accuracy(const MeanRequest& req) {
  if (!(req.epsilon1 > 0.0))
    throw InvalidRequest("mean: epsilon1 must be positive, got " +
                         std::to_string(req.epsilon1));
  if (!(req.delta1 > 0.0 && req.delta1 < 0.5))
    throw InvalidRequest("mean: delta1 must lie in (0, 1/2), got " +
                         std::to_string(req.delta1));
}

MeanResult run_exact(const MeanRequest& req) {
  MeanResult out;
  out.estimate = population_mean(req);
  out.charged_queries = req.population;
  out.actual_evaluations = req.population;
  out.repetitions = 1;
  out.draws_per_repetition = req.population;
  return out;
}

MeanResult run_randomized(const MeanRequest& req) {
  validate_accuracy(req);
  if (!(req.bound_g > 0.0))
    throw InvalidRequest("mean: bound_g must be positive, got " +
                         std::to_string(req.bound_g));
  const long long s_cheb = chebyshev_sample_size(req.bound_g, req.epsilon1);
  if (s_cheb >= req.population) {
    // Sampling would cost at least a full sweep; read the population once.
    MeanResult out = run_exact(req);
    return out;
  }
  const int reps = repetition_count(req.delta1);
  const long long s = s_cheb;
  std::vector<Vec> rep_means(reps, Vec(req.dim, 0.0));
  for (int r = 0; r < reps; ++r) {
    std::mt19937_64 eng(mix_seed(req.seed, static_cast<uint64_t>(r)));
    std::uniform_int_distribution<long long> pick(0, req.population - 1);
    Vec sum(req.dim, 0.0);
    for (long long j = 0; j < s; ++j) {
      Vec v = draw_sample(req, pick(eng));
      for (int c = 0; c < req.dim; ++c) sum[c] += v[c];
    }
    for (int c = 0; c < req.dim; ++c)
      rep_means[r][c] = sum[c] / static_cast<double>(s);
  }
  MeanResult out;
  out.estimate.resize(req.dim);
  std::vector<double> col(reps);
  for (int c = 0; c < req.dim; ++c) {
    for (int r = 0; r < reps; ++r) col[r] = rep_means[r][c];
    auto mid = col.begin() + reps / 2;
    std::nth_element(col.begin(), mid, col.end());
    out.estimate[c] = *mid;  // reps is odd, so this is the exact median
  }
  out.charged_queries = static_cast<long long>(reps) * s;
  out.actual_evaluations = out.charged_queries;
  out.repetitions = reps;
  out.draws_per_repetition = s;
  return out;
}

MeanResult run_quantum_sim(const MeanRequest& req) {
  validate_accuracy(req);
  MeanResult out;
  Vec spread;
  out.estimate = population_mean(req, &spread);
  // A zero-spread component is an eigenstate of the amplitude oracle and is
  // estimated exactly; only components with actual dispersion get shifted.
  switch (req.perturbation) {
    case Perturbation::none:
      break;
    case Perturbation::uniform_random: {
      std::mt19937_64 eng(mix_seed(req.seed, 0x7165ULL));
      std::uniform_real_distribution<double> shift(-req.epsilon1, req.epsilon1);
      for (int c = 0; c < req.dim; ++c) {
        const double e = shift(eng);  // always drawn: stream is c-indexed
        if (spread[static_cast<size_t>(c)] > 0.0) out.estimate[c] += e;
      }
      break;
    }
    case Perturbation::adversarial_sign: {
      for (int c = 0; c < req.dim; ++c) {
        if (spread[static_cast<size_t>(c)] <= 0.0) continue;
        const double sign =
            (mix_seed(req.seed, static_cast<uint64_t>(c)) & 1ULL) ? 1.0 : -1.0;
        out.estimate[c] += sign * req.epsilon1;
      }
      break;
    }
  }
  const int reps = repetition_count(req.delta1);
  const long long per_rep = std::min(
      req.population, static_cast<long long>(snapped_ceil(1.0 / req.epsilon1)));
  out.charged_queries = per_rep * static_cast<long long>(reps);
  out.actual_evaluations = req.population;
  out.repetitions = reps;
  out.draws_per_repetition = per_rep;
  return out;
}

}  // namespace

std::vector<double> midpoint_nodes(long long big_n) {
  if (big_n < 1)
    throw InvalidRequest("midpoint_nodes: N must be >= 1, got " +
                         std::to_string(big_n));
  std::vector<double> u(static_cast<size_t>(big_n));
  for (long long k = 0; k < big_n; ++k)
    u[static_cast<size_t>(k)] =
        static_cast<double>(2 * k + 1) / static_cast<double>(2 * big_n);
  return u;
}

int repetition_count(double delta1) {
  if (!(delta1 > 0.0 && delta1 < 0.5))
    throw InvalidRequest("repetition_count: delta1 must lie in (0, 1/2), got " +
                         std::to_string(delta1));
  return 2 * static_cast<int>(snapped_ceil(std::log2(1.0 / delta1))) + 1;
}

long long chebyshev_sample_size(double bound_g, double epsilon1) {
  return static_cast<long long>(
      snapped_ceil(4.0 * bound_g * bound_g / (epsilon1 * epsilon1)));
}

MeanResult estimate_mean(const MeanRequest& req) {
  validate_common(req);
  switch (req.mode) {
    case MeanMode::exact:
      return run_exact(req);
    case MeanMode::randomized:
      return run_randomized(req);
    case MeanMode::quantum_sim:
      return run_quantum_sim(req);
  }
  throw InvalidRequest("mean: unknown mode");
}

}  // namespace rqode
