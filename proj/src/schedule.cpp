#include "rqode/schedule.hpp"

#include <cmath>
#include <limits>

namespace rqode {

long long ipow_ll(long long base, int exp) {
  if (base < 0 || exp < 0) throw Error("ipow expects nonnegative arguments");
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<long long>::max() / base)
      throw Error("integer parameter overflow");
    r *= base;
  }
  return r;
}

double snapped_ceil(double x) {
  double r = std::nearbyint(x);
  if (std::fabs(x - r) <= 1e-9 * std::fmax(1.0, std::fabs(x))) return r;
  return std::ceil(x);
}

LevelParams params_for_level(long long n, int s, Setting setting) {
  if (n < 1) throw InvalidSpec("basic parameter must be >= 1");
  if (s < 1) throw InvalidSpec("level must be >= 1");
  LevelParams p;
  if (setting == Setting::rand) {
    p.m = ipow_ll(n, 2);
    p.l = ipow_ll(n, (1 << (s + 1)) - 4);
    p.big_n = ipow_ll(n, (1 << s) - 1);
  } else {
    p.m = n;
    p.l = ipow_ll(n, s - 1);
    p.big_n = ipow_ll(n, s);
  }
  p.epsilon1 = 1.0 / static_cast<double>(p.big_n);
  return p;
}

double delta1_of(double delta, long long n, int k, Setting setting) {
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidSpec("delta must lie in (0, 1/2)");
  if (n < 1) throw InvalidSpec("basic parameter must be >= 1");
  if (k < 1 || k > 40) throw InvalidSpec("depth k out of supported range");
  double events = setting == Setting::rand
                      ? std::pow(static_cast<double>(n),
                                 static_cast<double>((1LL << k) - 1))
                      : std::pow(static_cast<double>(n), static_cast<double>(k));
  // 1 - (1 - delta)^(1/events), evaluated without cancellation.
  return -std::expm1(std::log1p(-delta) / events);
}

double alpha_exponent(int s, double q, Setting setting) {
  if (s < 1) throw InvalidSpec("level must be >= 1");
  if (setting == Setting::rand)
    return q * static_cast<double>((1LL << s) - 1) +
           static_cast<double>((1LL << (s - 1)) - 1);
  return q * s + (s - 1);
}

long long beta_exponent(int s, Setting setting) {
  if (s < 1) throw InvalidSpec("level must be >= 1");
  return setting == Setting::rand ? (1LL << s) - 1 : s;
}

long long psi_count(long long n, int s, Setting setting) {
  if (n < 1) throw InvalidSpec("basic parameter must be >= 1");
  if (s < 1) throw InvalidSpec("level must be >= 1");
  if (setting == Setting::rand) {
    long long acc = 0;
    for (int i = 1; i <= s - 1; ++i) acc += ipow_ll(n, (1 << i) - 1);
    return acc;
  }
  if (n == 1) return s - 1;
  return (ipow_ll(n, s) - n) / (n - 1);
}

int choose_k(double gamma, Setting setting) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidPlan("gamma must lie in (0, 1]");
  double k = setting == Setting::rand ? snapped_ceil(std::log2(1.0 / gamma + 1.0))
                                      : snapped_ceil(2.0 / gamma);
  return static_cast<int>(k < 1.0 ? 1.0 : k);
}

PlanResult plan_for_epsilon(const PlanRequest& req) {
  if (!(req.epsilon > 0.0)) throw InvalidPlan("epsilon must be positive");
  if (!(req.cap_K > 0.0 && req.cbar > 0.0)) throw InvalidPlan("scale constants must be positive");
  if (!(req.q >= 1.0)) throw InvalidPlan("smoothness exponent q must be >= 1");
  PlanResult out;
  out.k = choose_k(req.gamma, req.setting);
  out.alpha_k = alpha_exponent(out.k, req.q, req.setting);
  if (req.setting == Setting::rand) {
    out.delta = 3.0 * req.epsilon * req.epsilon / (4.0 * req.cap_K * req.cap_K);
    if (!(out.delta < 0.5))
      throw InvalidPlan("epsilon too large for the given scale K: failure budget would reach 1/2");
  } else {
    if (!(req.delta > 0.0 && req.delta < 0.5))
      throw InvalidPlan("delta must lie in (0, 1/2)");
    out.delta = req.delta;
  }
  double base = 2.0 * req.cbar / req.epsilon;
  double n = base <= 1.0 ? 1.0 : snapped_ceil(std::pow(base, 1.0 / out.alpha_k));
  out.n = static_cast<long long>(n < 1.0 ? 1.0 : n);
  return out;
}

}  // namespace rqode
