#pragma once

#include <vector>

#include "rqode/rhs.hpp"

namespace rqode {

// Taylor coefficients of the local solution of z' = f(z), z(0) = y, up to the
// given degree: result[i] holds (1/j!) z_i^(j)(0) in coefficient j.
//
// Uses the fixed-point recurrence (j+1) z_{j+1} = (f o z)_j, which converges
// in `degree` passes because coefficient j of f o z depends only on
// coefficients 0..j of z.
inline VectorJet ode_taylor_coeffs(const RhsProgram& f, const Vec& y, int degree) {
  const int d = f.dim();
  VectorJet z;
  z.comps.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) z.comps.push_back(Jet::constant(y[static_cast<size_t>(i)], degree));
  for (int j = 0; j + 1 <= degree; ++j) {
    VectorJet fz = f(z);
    for (int i = 0; i < d; ++i) z[i][j + 1] = fz[i][j] / (j + 1);
  }
  return z;
}

// Homogeneous parts of the degree-r expansion of f about x along direction v:
// result[k][i] is the s^k coefficient of f_i(x + s v), i.e. (1/k!) f^(k)(x) v^k.
// One program evaluation on jets per call; no derivative tensors are formed.
inline std::vector<Vec> truncated_taylor_of_f(const RhsProgram& f, const Vec& x,
                                              const Vec& v, int r) {
  const int d = f.dim();
  VectorJet arg;
  arg.comps.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i)
    arg.comps.push_back(Jet::variable(x[static_cast<size_t>(i)], v[static_cast<size_t>(i)], r));
  VectorJet fx = f(arg);
  std::vector<Vec> h(static_cast<size_t>(r) + 1, Vec(static_cast<size_t>(d)));
  for (int k = 0; k <= r; ++k)
    for (int i = 0; i < d; ++i) h[static_cast<size_t>(k)][static_cast<size_t>(i)] = fx[i][k];
  return h;
}

// Degree-r Taylor polynomial of f about a fixed center, evaluated along
// arbitrary directions. value(v) sums the homogeneous parts in increasing
// order, so for f affine it reproduces the direct evaluation of f at
// center + v exactly whenever the program propagates the direction exactly.
class TaylorMap {
 public:
  TaylorMap(const RhsProgram& f, Vec center, int degree)
      : f_(&f), center_(std::move(center)), degree_(degree) {}

  const Vec& center() const { return center_; }
  int degree() const { return degree_; }

  std::vector<Vec> parts(const Vec& v) const {
    return truncated_taylor_of_f(*f_, center_, v, degree_);
  }

  Vec value(const Vec& v) const {
    std::vector<Vec> h = parts(v);
    Vec w = h[0];
    for (int k = 1; k <= degree_; ++k)
      for (size_t i = 0; i < w.size(); ++i) w[i] += h[static_cast<size_t>(k)][i];
    return w;
  }

 private:
  const RhsProgram* f_;
  Vec center_;
  int degree_;
};

}  // namespace rqode
