#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "rqode/errors.hpp"

namespace rqode {

// Truncated power series in one formal parameter s, coefficients c[0..order].
// Dense fixed-capacity storage: orders stay tiny here (degree <= r + 1), so a
// small inline array avoids heap traffic in the sampling loops.
//
// Invariant kept by every operation: coefficient k of the result depends only
// on coefficients 0..k of the operands, and coefficient 0 is produced by the
// exact scalar operation. Evaluating a program on jets therefore reproduces,
// bit for bit, the plain evaluation of the program at the constant terms.
class Jet {
 public:
  static constexpr int kMaxOrder = 11;

  explicit Jet(int order) : order_(order) {
    check_order(order);
    c_.fill(0.0);
  }

  static Jet constant(double v, int order) {
    Jet j(order);
    j.c_[0] = v;
    return j;
  }

  // v + dv*s, the seed for directional expansions.
  static Jet variable(double v, double dv, int order) {
    Jet j(order);
    j.c_[0] = v;
    if (order >= 1) j.c_[1] = dv;
    return j;
  }

  int order() const { return order_; }
  double operator[](int k) const { return c_[static_cast<size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<size_t>(k)]; }

 private:
  static void check_order(int order) {
    if (order < 0 || order > kMaxOrder)
      throw Error("jet order out of range [0, 11]");
  }

  int order_;
  std::array<double, kMaxOrder + 1> c_;
};

namespace detail {
inline void require_same_order(const Jet& a, const Jet& b) {
  if (a.order() != b.order())
    throw Error("jet order mismatch in binary operation");
}
}  // namespace detail

inline Jet operator+(const Jet& a, const Jet& b) {
  detail::require_same_order(a, b);
  Jet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k] + b[k];
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) {
  detail::require_same_order(a, b);
  Jet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k] - b[k];
  return r;
}

inline Jet operator-(const Jet& a) {
  Jet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = -a[k];
  return r;
}

inline Jet operator*(const Jet& a, const Jet& b) {
  detail::require_same_order(a, b);
  Jet r(a.order());
  for (int n = 0; n <= a.order(); ++n) {
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) acc += a[k] * b[n - k];
    r[n] = acc;
  }
  return r;
}

// q = a/b by the forward recurrence q_n = (a_n - sum_{k<n} q_k b_{n-k}) / b_0.
inline Jet operator/(const Jet& a, const Jet& b) {
  detail::require_same_order(a, b);
  if (b[0] == 0.0) throw DivisionByZeroJet("jet division by series with zero constant term");
  Jet q(a.order());
  for (int n = 0; n <= a.order(); ++n) {
    double acc = a[n];
    for (int k = 0; k < n; ++k) acc -= q[k] * b[n - k];
    q[n] = acc / b[0];
  }
  return q;
}

inline Jet operator+(const Jet& a, double s) {
  Jet r = a;
  r[0] = a[0] + s;
  return r;
}
inline Jet operator+(double s, const Jet& a) { return a + s; }

inline Jet operator-(const Jet& a, double s) {
  Jet r = a;
  r[0] = a[0] - s;
  return r;
}

inline Jet operator-(double s, const Jet& a) {
  Jet r = -a;
  r[0] = s - a[0];
  return r;
}

inline Jet operator*(const Jet& a, double s) {
  Jet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k] * s;
  return r;
}
inline Jet operator*(double s, const Jet& a) { return a * s; }

inline Jet operator/(const Jet& a, double s) {
  Jet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k] / s;
  return r;
}

inline Jet operator/(double s, const Jet& a) {
  return Jet::constant(s, a.order()) / a;
}

inline Jet exp(const Jet& x) {
  Jet e(x.order());
  e[0] = std::exp(x[0]);
  for (int n = 1; n <= x.order(); ++n) {
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += k * x[k] * e[n - k];
    e[n] = acc / n;
  }
  return e;
}

inline Jet log(const Jet& x) {
  if (x[0] <= 0.0) throw DomainError("jet log requires positive constant term");
  Jet l(x.order());
  l[0] = std::log(x[0]);
  for (int n = 1; n <= x.order(); ++n) {
    double acc = 0.0;
    for (int k = 1; k < n; ++k) acc += k * l[k] * x[n - k];
    l[n] = (x[n] - acc / n) / x[0];
  }
  return l;
}

namespace detail {
inline void sincos(const Jet& x, Jet& s, Jet& c) {
  s[0] = std::sin(x[0]);
  c[0] = std::cos(x[0]);
  for (int n = 1; n <= x.order(); ++n) {
    double sa = 0.0, ca = 0.0;
    for (int k = 1; k <= n; ++k) {
      sa += k * x[k] * c[n - k];
      ca += k * x[k] * s[n - k];
    }
    s[n] = sa / n;
    c[n] = -ca / n;
  }
}
}  // namespace detail

inline Jet sin(const Jet& x) {
  Jet s(x.order()), c(x.order());
  detail::sincos(x, s, c);
  return s;
}

inline Jet cos(const Jet& x) {
  Jet s(x.order()), c(x.order());
  detail::sincos(x, s, c);
  return c;
}

inline Jet sqrt(const Jet& x) {
  if (x[0] <= 0.0) throw DomainError("jet sqrt requires positive constant term");
  Jet r(x.order());
  r[0] = std::sqrt(x[0]);
  for (int n = 1; n <= x.order(); ++n) {
    double acc = x[n];
    for (int k = 1; k < n; ++k) acc -= r[k] * r[n - k];
    r[n] = acc / (2.0 * r[0]);
  }
  return r;
}

// x^p for real p, via the recurrence n y_n x_0 = sum_k (p(n-k) - k) x_{n-k} y_k.
inline Jet pow(const Jet& x, double p) {
  if (x[0] <= 0.0) throw DomainError("jet pow requires positive constant term");
  Jet y(x.order());
  y[0] = std::pow(x[0], p);
  for (int n = 1; n <= x.order(); ++n) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += (p * (n - k) - k) * x[n - k] * y[k];
    y[n] = acc / (n * x[0]);
  }
  return y;
}

// Generic-program helpers: literals that match the scalar type of a sample.
inline double one_like(double) { return 1.0; }
inline Jet one_like(const Jet& x) { return Jet::constant(1.0, x.order()); }
inline double zero_like(double) { return 0.0; }
inline Jet zero_like(const Jet& x) { return Jet(x.order()); }

}  // namespace rqode
