#include "rqode/piecewise.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <cstdio>
#include <ostream>

namespace rqode {

PiecewisePoly PiecewisePoly::uniform(double a, double b, long long pieces, int degree, int dim) {
  if (!(b > a)) throw InvalidSpec("piecewise interval must satisfy a < b");
  if (pieces < 1) throw InvalidSpec("piecewise needs at least one piece");
  if (degree < 0 || dim < 1) throw InvalidSpec("piecewise degree/dimension out of range");
  PiecewisePoly p;
  p.a_ = a;
  p.b_ = b;
  p.pieces_ = pieces;
  p.degree_ = degree;
  p.dim_ = dim;
  p.width_ = (b - a) / static_cast<double>(pieces);
  p.coeff_.assign(static_cast<size_t>(pieces) * static_cast<size_t>(degree + 1) *
                      static_cast<size_t>(dim),
                  0.0);
  return p;
}

long long PiecewisePoly::locate(double t) const {
  if (!(t >= a_ && t <= b_)) throw OutOfDomain("evaluation point outside [a, b]");
  long long j = static_cast<long long>(std::floor((t - a_) / width_));
  if (j < 0) j = 0;
  if (j > pieces_ - 1) j = pieces_ - 1;
  if (j + 1 < pieces_ && t >= piece_start(j + 1)) ++j;
  else if (j > 0 && t < piece_start(j)) --j;
  return j;
}

Vec PiecewisePoly::eval(double t, Side side) const {
  long long j = locate(t);
  if (side == Side::left_limit && j >= 1 && t == piece_start(j)) --j;
  return eval_piece(j, t - piece_start(j));
}

Vec PiecewisePoly::eval_piece(long long j, double tau) const {
  // c0 + tail is exactly the final step of Horner evaluation.
  Vec v = piece_tail(j, tau);
  for (int c = 0; c < dim_; ++c) {
    double& x = v[static_cast<size_t>(c)];
    x = coeff(j, 0, c) + x;
  }
  return v;
}

Vec PiecewisePoly::piece_value0(long long j) const {
  Vec v(static_cast<size_t>(dim_));
  for (int c = 0; c < dim_; ++c) v[static_cast<size_t>(c)] = coeff(j, 0, c);
  return v;
}

Vec PiecewisePoly::piece_tail(long long j, double tau) const {
  Vec v(static_cast<size_t>(dim_), 0.0);
  for (int c = 0; c < dim_; ++c) {
    double acc = 0.0;
    for (int k = degree_; k >= 1; --k) acc = acc * tau + coeff(j, k, c);
    v[static_cast<size_t>(c)] = acc * tau;
  }
  return v;
}

void PiecewisePoly::paste(const PiecewisePoly& src, long long dst_offset) {
  if (src.degree_ != degree_ || src.dim_ != dim_)
    throw GridMismatch("piece table shape mismatch while assembling");
  if (dst_offset < 0 || dst_offset + src.pieces_ > pieces_)
    throw GridMismatch("piece range out of bounds while assembling");
  size_t stride = static_cast<size_t>(degree_ + 1) * static_cast<size_t>(dim_);
  std::copy(src.coeff_.begin(), src.coeff_.end(),
            coeff_.begin() + static_cast<size_t>(dst_offset) * stride);
}

void PiecewisePoly::write_csv(std::ostream& os) const {
  os << "piece_index,coeff_index,component,value\n";
  char buf[64];
  for (long long j = 0; j < pieces_; ++j)
    for (int k = 0; k <= degree_; ++k)
      for (int c = 0; c < dim_; ++c) {
        std::snprintf(buf, sizeof buf, "%.17g", coeff(j, k, c));
        os << j << ',' << k << ',' << c << ',' << buf << '\n';
      }
}

double sup_norm_distance(const PiecewisePoly& p,
                         const std::function<Vec(double)>& reference,
                         int samples_per_piece) {
  if (samples_per_piece < 2) throw InvalidSpec("need at least 2 samples per piece");
  double worst = 0.0;
  const double w = p.piece_width();
  for (long long j = 0; j < p.pieces(); ++j) {
    for (int k = 0; k < samples_per_piece; ++k) {
      double tau = w * static_cast<double>(k) / static_cast<double>(samples_per_piece - 1);
      Vec got = p.eval_piece(j, tau);
      Vec want = reference(p.piece_start(j) + tau);
      for (size_t c = 0; c < got.size(); ++c)
        worst = std::max(worst, std::fabs(got[c] - want[c]));
    }
  }
  return worst;
}

GaussRule gauss_rule(int points) {
  if (points < 1) throw InvalidSpec("gauss rule needs at least one point");
  gsl_integration_glfixed_table* t =
      gsl_integration_glfixed_table_alloc(static_cast<size_t>(points));
  if (t == nullptr) throw Error("gauss table allocation failed");
  GaussRule rule;
  rule.nodes.resize(static_cast<size_t>(points));
  rule.weights.resize(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    double x = 0.0, w = 0.0;
    gsl_integration_glfixed_point(0.0, 1.0, static_cast<size_t>(i), &x, &w, t);
    rule.nodes[static_cast<size_t>(i)] = x;
    rule.weights[static_cast<size_t>(i)] = w;
  }
  gsl_integration_glfixed_table_free(t);
  return rule;
}

int gauss_points_for(int r) {
  return (r * (r + 1)) / 2 + 1;  // ceil((r(r+1)+1)/2) with r(r+1) even
}

Vec integrate_composed(const TaylorMap& w, const PiecewisePoly& path,
                       double t_lo, double t_hi) {
  if (!(t_hi > t_lo)) throw InvalidSpec("integration interval must have positive length");
  long long j = path.locate(t_lo);
  double start = path.piece_start(j);
  double end = (j + 1 < path.pieces()) ? path.piece_start(j + 1) : path.b();
  if (t_hi > end) throw GridMismatch("integration interval spans multiple pieces");
  GaussRule rule = gauss_rule(gauss_points_for(w.degree()));
  const double len = t_hi - t_lo;
  Vec acc(static_cast<size_t>(path.dim()), 0.0);
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    double t = t_lo + len * rule.nodes[i];
    Vec y = path.eval_piece(j, t - start);
    Vec v(y.size());
    for (size_t c = 0; c < y.size(); ++c) v[c] = y[c] - w.center()[c];
    Vec wy = w.value(v);
    for (size_t c = 0; c < acc.size(); ++c) acc[c] += len * rule.weights[i] * wy[c];
  }
  return acc;
}

}  // namespace rqode
