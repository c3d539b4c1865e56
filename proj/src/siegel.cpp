#include "rav/siegel.hpp"

namespace rav {

namespace {

void check_square_symmetric_pair(int g, int xr, int xc, int yr, int yc) {
  check(g >= 1, "ShapeMismatch", "g must be positive");
  check(xr == g && xc == g && yr == g && yc == g, "ShapeMismatch", "X and Y must be g x g");
}

}  // namespace

SiegelPoint SiegelPoint::exact(const ExactMatrix& x, const ExactMatrix& y) {
  SiegelPoint z;
  z.g = x.rows();
  z.mode = Mode::Exact;
  check_square_symmetric_pair(z.g, x.rows(), x.cols(), y.rows(), y.cols());
  z.xe = x;
  z.ye = y;
  combine_d(x.field_d(), y.field_d());
  return z;
}

SiegelPoint SiegelPoint::floating(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  SiegelPoint z;
  z.g = static_cast<int>(x.rows());
  z.mode = Mode::Float;
  check_square_symmetric_pair(z.g, static_cast<int>(x.rows()), static_cast<int>(x.cols()),
                              static_cast<int>(y.rows()), static_cast<int>(y.cols()));
  z.xf = x;
  z.yf = y;
  return z;
}

Eigen::MatrixXcd SiegelPoint::z_float() const {
  Eigen::MatrixXcd z(g, g);
  z.real() = x_float();
  z.imag() = y_float();
  return z;
}

SiegelPoint SiegelPoint::to_float_point() const {
  return is_exact() ? floating(to_float(xe), to_float(ye)) : *this;
}

void validate(const SiegelPoint& z, double sym_tol) {
  if (z.is_exact()) {
    check(z.xe.is_symmetric(), "NotSymmetric", "X is not symmetric");
    check(z.ye.is_symmetric(), "NotSymmetric", "Y is not symmetric");
    // Sylvester: Y > 0 iff every leading principal minor is positive.
    for (int k = 1; k <= z.g; ++k) {
      check(z.ye.block(0, 0, k, k).det().sign() > 0, "NotPositiveDefinite",
            "Y has a non-positive leading principal minor");
    }
    return;
  }
  check(max_abs(z.xf - z.xf.transpose()) <= sym_tol, "NotSymmetric", "X is not symmetric");
  check(max_abs(z.yf - z.yf.transpose()) <= sym_tol, "NotSymmetric", "Y is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (z.yf + z.yf.transpose()));
  check(llt.info() == Eigen::Success, "NotPositiveDefinite", "Cholesky of Y failed");
}

ExactMatrix symplectic_form_exact(int g) {
  ExactMatrix e(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    e.at(i, g + i) = QScalar(1);
    e.at(g + i, i) = QScalar(-1);
  }
  return e;
}

Eigen::MatrixXd symplectic_form_float(int g) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(2 * g, 2 * g);
  e.topRightCorner(g, g) = Eigen::MatrixXd::Identity(g, g);
  e.bottomLeftCorner(g, g) = -Eigen::MatrixXd::Identity(g, g);
  return e;
}

ComplexStructure complex_structure(const SiegelPoint& z) {
  validate(z);
  ComplexStructure j;
  j.g = z.g;
  j.mode = z.mode;
  int g = z.g;
  if (z.is_exact()) {
    ExactMatrix yinv = z.ye.inverse();
    ExactMatrix xyinv = z.xe * yinv;
    ExactMatrix m(2 * g, 2 * g);
    ExactMatrix tl = -xyinv;
    ExactMatrix tr = -z.ye - xyinv * z.xe;
    ExactMatrix br = yinv * z.xe;
    for (int i = 0; i < g; ++i)
      for (int jj = 0; jj < g; ++jj) {
        m.at(i, jj) = tl.at(i, jj);
        m.at(i, g + jj) = tr.at(i, jj);
        m.at(g + i, jj) = yinv.at(i, jj);
        m.at(g + i, g + jj) = br.at(i, jj);
      }
    j.je = m;
    return j;
  }
  Eigen::MatrixXd yinv = z.yf.llt().solve(Eigen::MatrixXd::Identity(g, g));
  yinv = 0.5 * (yinv + yinv.transpose()).eval();
  Eigen::MatrixXd xyinv = z.xf * yinv;
  j.jf.resize(2 * g, 2 * g);
  j.jf.topLeftCorner(g, g) = -xyinv;
  j.jf.topRightCorner(g, g) = -z.yf - xyinv * z.xf;
  j.jf.bottomLeftCorner(g, g) = yinv;
  j.jf.bottomRightCorner(g, g) = yinv * z.xf;
  return j;
}

SiegelPoint sp_action(const ExactMatrix& gamma, const SiegelPoint& z) {
  validate(z);
  int g = z.g;
  check(gamma.rows() == 2 * g && gamma.cols() == 2 * g, "ShapeMismatch",
        "gamma must be 2g x 2g");
  check(gamma.is_integer_matrix(), "NotSymplectic", "gamma must be integral");
  ExactMatrix e = symplectic_form_exact(g);
  check(gamma.transpose() * e * gamma == e, "NotSymplectic",
        "gamma does not preserve the symplectic form");
  ExactMatrix a = gamma.block(0, 0, g, g);
  ExactMatrix b = gamma.block(0, g, g, g);
  ExactMatrix c = gamma.block(g, 0, g, g);
  ExactMatrix d = gamma.block(g, g, g, g);

  if (z.is_exact()) {
    // (C Z + D)^-1 through the real 2g x 2g embedding [[P, -Q],[Q, P]] of
    // P + iQ; singular embedding <=> singular denominator.
    ExactMatrix p = c * z.xe + d;
    ExactMatrix q = c * z.ye;
    ExactMatrix k(2 * g, 2 * g);
    for (int i = 0; i < g; ++i)
      for (int jj = 0; jj < g; ++jj) {
        k.at(i, jj) = p.at(i, jj);
        k.at(i, g + jj) = -q.at(i, jj);
        k.at(g + i, jj) = q.at(i, jj);
        k.at(g + i, g + jj) = p.at(i, jj);
      }
    ExactMatrix rhs(2 * g, g);
    for (int i = 0; i < g; ++i) rhs.at(i, i) = QScalar(1);
    ExactMatrix w;
    try {
      w = solve_square(k, rhs);
    } catch (const DomainError& err) {
      if (err.code() == "SingularMatrix") fail("SingularDenominator", "C Z + D is singular");
      throw;
    }
    ExactMatrix u = w.block(0, 0, g, g);
    ExactMatrix v = w.block(g, 0, g, g);
    ExactMatrix nr = a * z.xe + b;
    ExactMatrix ni = a * z.ye;
    ExactMatrix xr = nr * u - ni * v;
    ExactMatrix xi = nr * v + ni * u;
    SiegelPoint out = SiegelPoint::exact(xr, xi);
    validate(out);
    return out;
  }

  Eigen::MatrixXcd zc = z.z_float();
  using Cplx = std::complex<double>;
  Eigen::MatrixXcd af = to_float(a).cast<Cplx>(), bf = to_float(b).cast<Cplx>();
  Eigen::MatrixXcd cf = to_float(c).cast<Cplx>(), df = to_float(d).cast<Cplx>();
  Eigen::MatrixXcd den = cf * zc + df;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(den);
  check(lu.isInvertible(), "SingularDenominator", "C Z + D is numerically singular");
  Eigen::MatrixXcd zp = (af * zc + bf) * lu.inverse();
  zp = 0.5 * (zp + zp.transpose()).eval();
  SiegelPoint out = SiegelPoint::floating(zp.real(), zp.imag());
  validate(out);
  return out;
}

SiegelPoint tau(const ExactMatrix& m, const SiegelPoint& z) {
  validate(z);
  check(m.rows() == z.g && m.cols() == z.g, "ShapeMismatch", "M must be g x g");
  check(m.is_symmetric(), "NotSymmetric", "M must be symmetric");
  if (z.is_exact()) return SiegelPoint::exact(m - z.xe, z.ye);
  return SiegelPoint::floating(to_float(m) - z.xf, z.yf);
}

bool in_fixed_locus(const ExactMatrix& m, const SiegelPoint& z, double tol_fix) {
  check(m.rows() == z.g && m.cols() == z.g, "ShapeMismatch", "M must be g x g");
  if (z.is_exact()) return QScalar(2) * z.xe == m;
  return max_abs(2.0 * z.xf - to_float(m)) <= tol_fix;
}

SiegelPoint nearest_fixed(const ExactMatrix& m, const SiegelPoint& z) {
  check(m.rows() == z.g && m.cols() == z.g, "ShapeMismatch", "M must be g x g");
  check(m.is_symmetric(), "NotSymmetric", "M must be symmetric");
  if (z.is_exact()) {
    ExactMatrix half = QScalar(mpq_class(1, 2)) * m;
    return SiegelPoint::exact(half, z.ye);
  }
  return SiegelPoint::floating(0.5 * to_float(m), z.yf);
}

}  // namespace rav
