#include "rav/grassmann.hpp"

#include <algorithm>
#include <cmath>

namespace rav {

RealPlane RealPlane::from_span(const Eigen::MatrixXd& a) {
  RealPlane p;
  p.n = static_cast<int>(a.rows());
  if (a.cols() == 0) {
    p.r = 0;
    p.b.resize(p.n, 0);
    return p;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  p.r = static_cast<int>(qr.rank());
  p.b = qr.householderQ() * Eigen::MatrixXd::Identity(p.n, p.r);
  return p;
}

RealPlane RealPlane::of(const RationalPlane& p) {
  Eigen::MatrixXd b = to_float(p.basis());
  for (int j = 0; j < b.cols(); ++j) {
    double norm = b.col(j).norm();
    if (norm > 0) b.col(j) /= norm;
  }
  return from_span(b);
}

double subspace_distance(const RealPlane& l1, const RealPlane& l2) {
  check(l1.n == l2.n, "ShapeMismatch", "planes live in different ambient spaces");
  check(l1.r == l2.r, "ShapeMismatch", "planes have different dimensions");
  if (l1.r == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(l1.b.transpose() * l2.b);
  double c = std::clamp(svd.singularValues()(l1.r - 1), -1.0, 1.0);
  // acos loses half the significant digits near angle zero; switch to the
  // sine of the same principal angle (projector residual) when it is small.
  if (c * c <= 0.5) return std::acos(c);
  Eigen::MatrixXd res = l2.b - l1.b * (l1.b.transpose() * l2.b);
  Eigen::JacobiSVD<Eigen::MatrixXd> svs(res);
  double s = std::clamp(svs.singularValues()(0), -1.0, 1.0);
  return std::asin(s);
}

EigenSplit eig_decomp_involution(const ExactMatrix& f) {
  int n = f.rows();
  check(n >= 1 && f.cols() == n, "ShapeMismatch", "F must be square");
  check(f * f == ExactMatrix::identity(n), "NotInvolution", "F^2 != I");
  EigenSplit s;
  s.plus = (f - ExactMatrix::identity(n)).kernel();
  s.minus = (f + ExactMatrix::identity(n)).kernel();
  return s;
}

mpq_class best_rational(double x, long max_den) {
  check(max_den >= 1, "BadConfig", "denominator bound must be >= 1");
  check(std::isfinite(x), "ParseError", "non-finite value");
  mpq_class target(x);  // exact: doubles are dyadic rationals
  int s = sgn(target);
  if (s == 0) return mpq_class(0);
  mpq_class t = s < 0 ? mpq_class(-target) : target;
  mpz_class bound(max_den);
  // convergent recurrence p_n = a_n p_{n-1} + p_{n-2}
  mpz_class p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  mpq_class r = t;
  while (true) {
    mpz_class a = r.get_num() / r.get_den();  // floor (r > 0)
    mpz_class p = a * p1 + p2, q = a * q1 + q2;
    if (q > bound) {
      // best with denominator <= bound: previous convergent or the largest
      // admissible semiconvergent of this step
      mpq_class conv(p1, q1);
      conv.canonicalize();
      mpz_class tmax = (bound - q2) / q1;
      if (tmax >= 1) {
        mpq_class semi(tmax * p1 + p2, tmax * q1 + q2);
        semi.canonicalize();
        if (abs(t - semi) < abs(t - conv)) conv = semi;
      }
      return s < 0 ? mpq_class(-conv) : conv;
    }
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
    mpq_class frac = r - mpq_class(a);
    if (sgn(frac) == 0) break;  // exact
    r = mpq_class(frac.get_den(), frac.get_num());
    r.canonicalize();
  }
  mpq_class exact(p1, q1);
  exact.canonicalize();
  return s < 0 ? mpq_class(-exact) : exact;
}

namespace {

// Column echelon normalization of float coordinates (column operations only:
// the span is preserved), pivot = lowest unused row above threshold, then
// entrywise continued-fraction rounding. Pivot rows come out as an exact
// identity, so the rounded matrix always has full column rank.
ExactMatrix round_echelon(Eigen::MatrixXd c, long max_den) {
  const int rows = static_cast<int>(c.rows());
  const int cols = static_cast<int>(c.cols());
  std::vector<bool> used(static_cast<std::size_t>(rows), false);
  for (int col = 0; col < cols; ++col) {
    int piv = -1;
    for (int row = 0; row < rows; ++row)
      if (!used[static_cast<std::size_t>(row)] && std::abs(c(row, col)) > 1e-9) {
        piv = row;
        break;
      }
    check(piv >= 0, "DimensionDrop", "degenerate column while normalizing coordinates");
    used[static_cast<std::size_t>(piv)] = true;
    c.col(col) /= c(piv, col);
    for (int other = 0; other < cols; ++other)
      if (other != col) c.col(other) -= c(piv, other) * c.col(col);
  }
  ExactMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out.at(i, j) = QScalar(best_rational(c(i, j), max_den));
  return out;
}

}  // namespace

RationalPlane rational_approx_fixed(const ExactMatrix& f, const RealPlane& l, long denom_bound,
                                    double tol_fstable) {
  int n = f.rows();
  check(f.cols() == n, "ShapeMismatch", "F must be square");
  check(l.n == n, "ShapeMismatch", "plane ambient dimension mismatch");
  check(denom_bound >= 1, "BadConfig", "denom_bound must be >= 1");
  check(l.r >= 1, "DimensionDrop", "cannot approximate the zero plane");
  EigenSplit split = eig_decomp_involution(f);
  Eigen::MatrixXd ff = to_float(f);

  RealPlane fl = RealPlane::from_span(ff * l.b);
  check(fl.r == l.r && subspace_distance(fl, l) <= tol_fstable, "NotFStable",
        "L is not F-stable within tolerance");

  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const ExactMatrix* parts[2] = {&split.plus, &split.minus};
  Eigen::MatrixXd projs[2] = {0.5 * (id + ff), 0.5 * (id - ff)};

  ExactMatrix basis(n, 0);
  int total_r = 0;
  for (int s = 0; s < 2; ++s) {
    if (parts[s]->cols() == 0) continue;
    // Component rank must be cut at an absolute scale: l.b is orthonormal, so
    // a plane lying entirely in the other eigenspace projects to ~1e-15 noise
    // that a relative threshold would promote to a spurious dimension.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(projs[s] * l.b, Eigen::ComputeThinU);
    int rc = 0;
    while (rc < svd.singularValues().size() && svd.singularValues()(rc) > 1e-9) ++rc;
    if (rc == 0) continue;
    Eigen::MatrixXd compb = svd.matrixU().leftCols(rc);
    total_r += rc;
    Eigen::MatrixXd vf = to_float(*parts[s]);
    Eigen::MatrixXd coords = (vf.transpose() * vf).ldlt().solve(vf.transpose() * compb);
    basis = ExactMatrix::hstack(basis, *parts[s] * round_echelon(coords, denom_bound));
  }
  check(total_r == l.r, "DimensionDrop", "eigencomponent dimensions do not sum to dim L");
  RationalPlane p = RationalPlane::from_columns(basis);
  check(p.r() == l.r, "DimensionDrop", "rounded basis lost rank");
  return p;
}

}  // namespace rav
