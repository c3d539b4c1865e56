#include "rav/plane.hpp"

namespace rav {

RationalPlane RationalPlane::from_columns(const ExactMatrix& b) {
  check(b.is_rational_matrix(), "NotRational", "plane basis entries must be rational");
  check(b.cols() >= 1, "ShapeMismatch", "plane needs at least one basis column");
  // Row echelon on the transpose = column echelon on b; RREF rows are the
  // canonical generators of the row space, i.e. of colspace(b).
  ExactMatrix::Rref rr = b.transpose().rref();
  check(rr.rank == b.cols(), "RankDeficient", "plane basis columns are dependent");
  RationalPlane p;
  p.basis_ = ExactMatrix(b.rows(), rr.rank);
  for (int row = 0; row < rr.rank; ++row) {
    // Scale the RREF row to a primitive integer vector. The pivot entry is 1,
    // so after scaling by lcm(dens)/gcd(nums) > 0 it stays positive.
    mpz_class den_lcm = 1;
    mpz_class num_gcd = 0;
    for (int j = 0; j < b.rows(); ++j) {
      const mpq_class& q = rr.r.at(row, j).a();
      if (sgn(q) == 0) continue;
      mpz_class den = q.get_den();
      den_lcm = den_lcm / gcd(den_lcm, den) * den;
      num_gcd = gcd(num_gcd, mpz_class(q.get_num()));
    }
    mpq_class scale(den_lcm, num_gcd);
    scale.canonicalize();
    for (int j = 0; j < b.rows(); ++j) {
      p.basis_.at(j, row) = QScalar(mpq_class(rr.r.at(row, j).a() * scale));
    }
  }
  return p;
}

bool RationalPlane::contains(const ExactMatrix& v) const {
  check(v.rows() == n() && v.cols() == 1, "ShapeMismatch", "membership expects a column vector");
  return ExactMatrix::hstack(basis_, v).rank() == r();
}

bool operator<(const RationalPlane& x, const RationalPlane& y) {
  if (x.n() != y.n()) return x.n() < y.n();
  if (x.r() != y.r()) return x.r() < y.r();
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.r(); ++j) {
      const mpq_class& a = x.basis_.at(i, j).a();
      const mpq_class& b = y.basis_.at(i, j).a();
      if (a != b) return a < b;
    }
  return false;
}

}  // namespace rav
