#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "rqode/errors.hpp"
#include "rqode/rhs.hpp"
#include "rqode/taylor.hpp"

namespace rqode {

// Evaluation side at a breakpoint: pieces are half-open [t_j, t_{j+1}) except
// the last, which is closed at b. left_limit asks for the limit from within
// the preceding piece.
enum class Side { right, left_limit };

// Vector-valued polynomial on [a, b], pieces of equal width, coefficients in
// the local coordinate tau = t - piece_start. Degree and dimension are shared
// by all pieces.
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  static PiecewisePoly uniform(double a, double b, long long pieces, int degree, int dim);

  double a() const { return a_; }
  double b() const { return b_; }
  long long pieces() const { return pieces_; }
  int degree() const { return degree_; }
  int dim() const { return dim_; }
  double piece_width() const { return width_; }
  double piece_start(long long j) const { return a_ + static_cast<double>(j) * width_; }

  double coeff(long long piece, int k, int comp) const { return coeff_[index(piece, k, comp)]; }
  double& coeff(long long piece, int k, int comp) { return coeff_[index(piece, k, comp)]; }

  // Piece index containing t, honoring the half-open convention. Throws
  // OutOfDomain outside [a, b].
  long long locate(double t) const;

  Vec eval(double t, Side side = Side::right) const;

  // Horner evaluation of piece j at local offset tau.
  Vec eval_piece(long long j, double tau) const;

  // Constant term of piece j (the value at its left endpoint).
  Vec piece_value0(long long j) const;

  // eval_piece(j, tau) - piece_value0(j), computed tail-first so that
  // piece_value0 + piece_tail reproduces the Horner evaluation bit for bit.
  Vec piece_tail(long long j, double tau) const;

  // Copies all pieces of src into this table starting at piece dst_offset.
  // Degrees and dimensions must match.
  void paste(const PiecewisePoly& src, long long dst_offset);

  // Columns: piece_index,coeff_index,component,value
  void write_csv(std::ostream& os) const;

 private:
  size_t index(long long piece, int k, int comp) const {
    return (static_cast<size_t>(piece) * static_cast<size_t>(degree_ + 1) +
            static_cast<size_t>(k)) * static_cast<size_t>(dim_) + static_cast<size_t>(comp);
  }

  double a_ = 0.0, b_ = 0.0, width_ = 0.0;
  long long pieces_ = 0;
  int degree_ = 0, dim_ = 0;
  std::vector<double> coeff_;
};

// Max over a uniform sample grid (samples_per_piece >= 2 points per piece,
// endpoints included, right endpoints evaluated from within the piece) of the
// max-norm distance to a reference curve.
double sup_norm_distance(const PiecewisePoly& p,
                         const std::function<Vec(double)>& reference,
                         int samples_per_piece = 8);

// Gauss-Legendre rule on [0, 1]; weights sum to one.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_rule(int points);

// Node count that integrates compositions (degree-r map) o (degree r+1 piece)
// exactly: ceil((r (r+1) + 1) / 2).
int gauss_points_for(int r);

// Exact integral over [t_lo, t_hi] of t -> w(path(t) - center), the degree-r
// Taylor polynomial w composed with one polynomial piece of the path. Throws
// GridMismatch if the interval is not contained in a single piece.
Vec integrate_composed(const TaylorMap& w, const PiecewisePoly& path,
                       double t_lo, double t_hi);

}  // namespace rqode
