#include "rqode/solver.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "rqode/errors.hpp"
#include "rqode/rng.hpp"
#include "rqode/taylor.hpp"

namespace rqode {
namespace {

constexpr uint64_t kEstimatorTag = 0xA11CE5ULL;

struct Workspace {
  const RhsProgram* f = nullptr;
  SolverConfig cfg;
  double delta1 = 0.25;
  CostLedger ledger;
  long long estimator_invocations = 0;
  double max_g = 0.0;
};

void add_derivative(Workspace& ws, int level, long long calls) {
  LevelCost& lc = ws.ledger.by_level[static_cast<size_t>(level - 1)];
  lc.derivative_evals += calls;
  lc.charged_queries += calls;
  lc.actual_evaluations += calls;
}

void add_estimator(Workspace& ws, int level, const MeanResult& mr) {
  LevelCost& lc = ws.ledger.by_level[static_cast<size_t>(level - 1)];
  lc.charged_queries += mr.charged_queries;
  lc.actual_evaluations += mr.actual_evaluations;
  ws.estimator_invocations += 1;
}

void check_finite(const Vec& y, int level, long long step) {
  for (double v : y)
    if (!std::isfinite(v))
      throw NumericalError("level " + std::to_string(level) + ", step " +
                           std::to_string(step) + ": state became non-finite");
}

PiecewisePoly run_level(Workspace& ws, int s, long long n, double a, double b,
                        const Vec& y0, uint64_t ctx);

PiecewisePoly run_base(Workspace& ws, long long n, double a, double b,
                       const Vec& y0) {
  const int d = ws.f->dim();
  const int r = ws.cfg.r;
  PiecewisePoly out = PiecewisePoly::uniform(a, b, n, r + 1, d);
  const double h = out.piece_width();
  Vec y = y0;
  for (long long i = 0; i < n; ++i) {
    TaylorStep st = taylor_step(*ws.f, y, h, r);
    for (int k = 0; k <= r + 1; ++k)
      for (int c = 0; c < d; ++c) out.coeff(i, k, c) = st.coeffs[c][k];
    y = std::move(st.y_next);
    check_finite(y, 1, i);
    add_derivative(ws, 1, r + 2);
  }
  return out;
}

PiecewisePoly run_level(Workspace& ws, int s, long long n, double a, double b,
                        const Vec& y0, uint64_t ctx) {
  if (s == 1) return run_base(ws, n, a, b, y0);

  const int d = ws.f->dim();
  const int r = ws.cfg.r;
  const LevelParams par = params_for_level(n, s - 1, ws.cfg.setting);
  const long long cells = par.m * par.l;  // per macro step
  PiecewisePoly out = PiecewisePoly::uniform(a, b, n * cells, r + 1, d);
  const double h = (b - a) / static_cast<double>(n);
  const int gpts = gauss_points_for(r);
  const std::vector<double> nodes = midpoint_nodes(par.big_n);

  Vec y = y0;
  for (long long i = 0; i < n; ++i) {
    const double x_lo = a + static_cast<double>(i) * h;
    const double x_hi = (i + 1 == n) ? b : a + static_cast<double>(i + 1) * h;
    const uint64_t child_ctx = mix_seed(ctx, static_cast<uint64_t>(i));

    PiecewisePoly li = run_level(ws, s - 1, par.m, x_lo, x_hi, y, child_ctx);
    if (li.pieces() != cells)
      throw GridMismatch("level " + std::to_string(s) + ", step " +
                         std::to_string(i) + ": child produced " +
                         std::to_string(li.pieces()) + " pieces, expected " +
                         std::to_string(cells));
    const double hbar = li.piece_width();
    const double scale = std::pow(hbar, ws.cfg.q());

    // Local maps of f about each cell's left knot value, and the exact
    // integrals of their composition with the child pieces.
    std::vector<TaylorMap> maps;
    maps.reserve(static_cast<size_t>(cells));
    Vec sum_w(static_cast<size_t>(d), 0.0);
    try {
      for (long long j = 0; j < cells; ++j) {
        maps.emplace_back(*ws.f, li.piece_value0(j), r);
        const double t0 = li.piece_start(j);
        const double t1 = (j + 1 < cells) ? li.piece_start(j + 1) : li.b();
        const Vec part = integrate_composed(maps.back(), li, t0, t1);
        for (int c = 0; c < d; ++c) sum_w[static_cast<size_t>(c)] += part[static_cast<size_t>(c)];
        add_derivative(ws, s, static_cast<long long>(gpts) * (r + 1));
      }
    } catch (const NumericalError& e) {
      throw NumericalError("level " + std::to_string(s) + ", step " +
                           std::to_string(i) + ": " + e.what());
    }

    // Pooled residual population: sample p covers cell j = p / N at midpoint
    // node k = p % N. Directions come from the Horner tail, so the map value
    // and the path value share every rounding step.
    MeanRequest mreq;
    mreq.population = cells * par.big_n;
    mreq.dim = d;
    mreq.epsilon1 = par.epsilon1;
    mreq.delta1 = ws.delta1;
    mreq.mode = ws.cfg.mean_mode;
    mreq.perturbation = ws.cfg.perturbation;
    mreq.bound_g = ws.cfg.bound_g;
    mreq.seed = mix_seed(child_ctx, kEstimatorTag);
    mreq.sample = [&](long long p) -> Vec {
      const long long j = p / par.big_n;
      const long long k = p % par.big_n;
      try {
        const double tau = nodes[static_cast<size_t>(k)] * hbar;
        const Vec tail = li.piece_tail(j, tau);
        const Vec& center = maps[static_cast<size_t>(j)].center();
        Vec ypt(static_cast<size_t>(d));
        for (int c = 0; c < d; ++c)
          ypt[static_cast<size_t>(c)] = center[static_cast<size_t>(c)] + tail[static_cast<size_t>(c)];
        const Vec fv = (*ws.f)(ypt);
        const Vec wv = maps[static_cast<size_t>(j)].value(tail);
        Vec g(static_cast<size_t>(d));
        for (int c = 0; c < d; ++c) {
          const size_t cc = static_cast<size_t>(c);
          g[cc] = (fv[cc] - wv[cc]) / scale;
          const double mag = std::fabs(g[cc]);
          if (mag > ws.max_g) ws.max_g = mag;
        }
        return g;
      } catch (const std::exception& e) {
        throw OracleFailure("level " + std::to_string(s) + ", step " +
                            std::to_string(i) + ", cell " + std::to_string(j) +
                            ", node " + std::to_string(k) + ": " + e.what());
      }
    };
    const MeanResult ap = estimate_mean(mreq);
    add_estimator(ws, s, ap);

    const double corr = std::pow(hbar, ws.cfg.q() + 1.0) * static_cast<double>(cells);
    for (int c = 0; c < d; ++c) {
      const size_t cc = static_cast<size_t>(c);
      y[cc] = y[cc] + sum_w[cc] + corr * ap.estimate[cc];
    }
    check_finite(y, s, i);
    out.paste(li, i * cells);
  }
  return out;
}

void validate(const IVProblem& p, const SolverConfig& cfg) {
  if (static_cast<int>(p.eta.size()) != p.rhs.dim())
    throw InvalidSpec("initial value dimension does not match the rhs");
  if (!(p.a < p.b)) throw InvalidSpec("problem interval must satisfy a < b");
  if (cfg.r < 0 || cfg.r > 10)
    throw InvalidSpec("r must lie in [0, 10], got " + std::to_string(cfg.r));
  if (!(cfg.rho > 0.0 && cfg.rho <= 1.0))
    throw InvalidSpec("rho must lie in (0, 1], got " + std::to_string(cfg.rho));
  if (!(cfg.q() >= 1.0))
    throw InvalidSpec("regularity q = r + rho must be >= 1");
  if (cfg.level < 1) throw InvalidSpec("level must be >= 1");
  if (cfg.top_level < cfg.level)
    throw InvalidSpec("top_level must be >= level");
  if (cfg.n < 1) throw InvalidSpec("basic parameter n must be >= 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 0.5))
    throw InvalidSpec("delta must lie in (0, 1/2)");
  if (!(cfg.bound_g > 0.0)) throw InvalidSpec("bound_g must be positive");
}

}  // namespace

long long CostLedger::charged_total() const {
  long long t = 0;
  for (const LevelCost& lc : by_level) t += lc.charged_queries;
  return t;
}

long long CostLedger::actual_total() const {
  long long t = 0;
  for (const LevelCost& lc : by_level) t += lc.actual_evaluations;
  return t;
}

long long CostLedger::derivative_total() const {
  long long t = 0;
  for (const LevelCost& lc : by_level) t += lc.derivative_evals;
  return t;
}

TaylorStep taylor_step(const RhsProgram& f, const Vec& y, double h, int r) {
  if (!(h > 0.0)) throw InvalidSpec("taylor_step needs h > 0");
  if (r < 0 || r > 10) throw InvalidSpec("taylor_step needs r in [0, 10]");
  TaylorStep st;
  st.coeffs = ode_taylor_coeffs(f, y, r + 1);
  st.y_next.resize(y.size());
  for (int c = 0; c < f.dim(); ++c) {
    // Tail-first Horner: identical rounding to PiecewisePoly::eval_piece.
    double acc = 0.0;
    for (int k = r + 1; k >= 1; --k) acc = acc * h + st.coeffs[c][k];
    st.y_next[static_cast<size_t>(c)] = st.coeffs[c][0] + acc * h;
  }
  return st;
}

long long pieces_for(long long n, int s, Setting setting) {
  if (s < 1 || s > 20) throw InvalidSpec("level out of range");
  const int e = (setting == Setting::rand) ? (1 << s) - 1 : s;
  return ipow_ll(n, e);
}

SolveResult solve(const IVProblem& problem, const SolverConfig& cfg0) {
  SolverConfig cfg = cfg0;
  if (cfg.top_level == 0) cfg.top_level = cfg.level;
  validate(problem, cfg);

  Workspace ws;
  ws.f = &problem.rhs;
  ws.cfg = cfg;
  ws.delta1 = (cfg.level >= 2)
                  ? delta1_of(cfg.delta, cfg.n, cfg.top_level, cfg.setting)
                  : cfg.delta;
  ws.ledger.by_level.assign(static_cast<size_t>(cfg.level), LevelCost{});

  SolveResult out;
  out.approximation =
      run_level(ws, cfg.level, cfg.n, problem.a, problem.b, problem.eta, cfg.seed);
  out.ledger = std::move(ws.ledger);
  out.estimator_invocations = ws.estimator_invocations;
  out.max_residual_norm = ws.max_g;
  return out;
}

}  // namespace rqode
