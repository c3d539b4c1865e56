#pragma once

#include <Eigen/Dense>

#include "rav/convert.hpp"
#include "rav/exact_matrix.hpp"
#include "rav/plane.hpp"

namespace rav {

// An r-dimensional subspace of R^n carried by a column-orthonormal float
// basis (B^t B = I_r within 1e-12).
struct RealPlane {
  int n = 0;
  int r = 0;
  Eigen::MatrixXd b;

  // Orthonormal basis of the column span; r is the numerical rank.
  static RealPlane from_span(const Eigen::MatrixXd& a);
  // Canonical integer bases mix wildly different column scales; columns are
  // normalized before the QR so its rank cut is not swamped by the largest.
  static RealPlane of(const RationalPlane& p);

  // Orthogonal projector B B^t onto the plane.
  Eigen::MatrixXd projector() const { return b * b.transpose(); }
};

// Largest principal angle between two planes of equal dimension, in
// [0, pi/2]; zero iff the column spans agree. ShapeMismatch on size mismatch.
double subspace_distance(const RealPlane& l1, const RealPlane& l2);

// Exact eigenspace bases of an involution: plus = ker(F - I),
// minus = ker(F + I); dimensions always sum to n. NotInvolution if F^2 != I.
struct EigenSplit {
  ExactMatrix plus;
  ExactMatrix minus;
};
EigenSplit eig_decomp_involution(const ExactMatrix& f);

// Best rational p/q with q <= max_den, by continued fractions on the exact
// binary value of x; the final convergent and its last semiconvergent are
// compared exactly, ties broken toward the smaller denominator.
mpq_class best_rational(double x, long max_den);

// Rational plane, exactly F-stable by construction, approximating an
// F-stable real plane L: split L along the eigenspaces of F, write each
// component in coordinates on the exact eigenbasis, normalize to column
// echelon (lowest-index pivots), and round the coordinates to denominators
// <= denom_bound. NotFStable if F(L) != L within tol_fstable; DimensionDrop
// if a split component or the rounded basis loses rank.
RationalPlane rational_approx_fixed(const ExactMatrix& f, const RealPlane& l, long denom_bound,
                                    double tol_fstable = 1e-8);

}  // namespace rav
