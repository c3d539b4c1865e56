#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <vector>

#include "rav/exact_matrix.hpp"

namespace rav {

// Symmetric bilinear map q: C^g x C^g -> C^m with exact entries,
// q(e_i, e_j)[c] stored at (i*g + j)*m + c; symmetric in (i, j).
struct QTensor {
  int g = 0;
  int m = 0;
  std::vector<QScalar> q;

  QTensor() = default;
  QTensor(int g_, int m_);

  const QScalar& at(int i, int j, int c) const;
  QScalar& at(int i, int j, int c);
  bool is_symmetric() const;
};

// The universal instance: m = g(g+1)/2, q = the symmetrization pairing into
// Sym^2 C^g; coordinates indexed by pairs {i, j}, i <= j, lexicographic.
QTensor siegel_q(int g);

// Matrix of mu on column pairs (a_col of A, b_col of B): m rows, columns
// indexed (a, b) at a*B.cols + b; entry = sum_ij A[i][a] B[j][b] q[i][j][c].
ExactMatrix mu_pairs(const QTensor& q, const ExactMatrix& a, const ExactMatrix& b);
Eigen::MatrixXcd mu_pairs(const QTensor& q, const Eigen::MatrixXcd& a,
                          const Eigen::MatrixXcd& b);

// Exactness of 0 -> Wedge^2 W -> W (x) C^g -> C^m: rank of mu equals
// k g - k(k-1)/2 AND every kernel vector is an antisymmetric tensor (so the
// kernel is exactly Wedge^2 W). W given by its g x k basis matrix.
bool check_condition1(const QTensor& q, const ExactMatrix& w);
bool check_condition1(const QTensor& q, const Eigen::MatrixXcd& w, double tol = 1e-9);

// Injectivity of mu on W (x) W^perp, the perp taken with respect to a
// nondegenerate pairing eh on C^g (adjoint in the complex overload):
// rank = k(g - k). DegeneratePolarization if eh is singular.
bool check_Ek(const QTensor& q, const ExactMatrix& w, const ExactMatrix& eh);
bool check_Ek(const QTensor& q, const Eigen::MatrixXcd& w, const Eigen::MatrixXcd& eh,
              double tol = 1e-9);

// Homogeneous polynomial in 3 variables with exact rational coefficients.
struct Poly3 {
  int degree = 0;
  std::map<std::array<int, 3>, mpq_class> coeff;  // exponents sum to degree

  static Poly3 fermat(int d);
  Poly3 partial(int var) const;
  Poly3 times_monomial(const std::array<int, 3>& mono) const;
};

// Monomial exponents of total degree n in 3 variables, descending
// lexicographic; empty for n < 0.
std::vector<std::array<int, 3>> monomials_deg(int n);

// Multiplication H^0(K) (x) H^0(K) -> H^0(K^2) for the smooth plane curve
// F = 0 of degree d: domain basis = monomials of degree d-3
// (g = (d-1)(d-2)/2), target = monomials of degree 2d-6 modulo
// F * (degree d-6). Smoothness is certified by the partials spanning
// everything in degree 3d-5 (SingularCurve otherwise); DegreeTooSmall for
// d < 4.
QTensor plane_curve_q(const Poly3& f);

struct FermatReport {
  int d = 0;
  int g = 0;
  int m = 0;
  ExactMatrix v;  // g x 1 witness direction
  bool passes = false;
  int witness_rank = 0;
};

// Searches for v with mu injective on <v> (x) H^0(K) for the degree-d Fermat
// curve: monomial directions first, then seeded random rational vectors.
FermatReport fermat_criterion(int d, int k = 1, unsigned long seed = 0);

}  // namespace rav
