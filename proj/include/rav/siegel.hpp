#pragma once

#include <Eigen/Dense>

#include "rav/convert.hpp"
#include "rav/exact_matrix.hpp"

namespace rav {

// Global homology conventions, fixed once and used by every module.
//
// The lattice basis is ordered (a_1..a_g, b_1..b_g) and the period matrix is
// Pi = (I_g | Z): the a-block has identity periods and b_j has period Z e_j,
// i.e. x = (u|v) maps to u + Z v in C^g. The symplectic form is
// E = [[0, I_g],[-I_g, 0]] (E(a_i, b_j) = +delta_ij), and the lattice
// involution attached to a symmetric integer M is T = [[I_g, M],[0, -I_g]].
// With these choices the complex structure J solved from Pi J = i Pi is
//   J = [[-X Y^-1, -Y - X Y^-1 X],[Y^-1, Y^-1 X]],
// and all three invariant families hold at once, exactly in exact mode:
// J^2 = -I and J^t E J = E with E(x, Jx) > 0, T^t E T = -E, and on the fixed
// locus 2X = M the anti-holomorphy identity T J + J T = 0. The mirrored
// ordering Pi = (Z | I) flips the sign of E(x, Jx) and breaks the
// anti-holomorphy identity against this T, which is why it is not used.

enum class Mode { Exact, Float };

// Z = X + iY with X, Y symmetric and Y positive definite, in exactly one of
// the two arithmetic modes.
struct SiegelPoint {
  int g = 0;
  Mode mode = Mode::Float;
  ExactMatrix xe, ye;     // exact mode
  Eigen::MatrixXd xf, yf; // float mode

  static SiegelPoint exact(const ExactMatrix& x, const ExactMatrix& y);
  static SiegelPoint floating(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

  bool is_exact() const { return mode == Mode::Exact; }
  Eigen::MatrixXd x_float() const { return is_exact() ? to_float(xe) : xf; }
  Eigen::MatrixXd y_float() const { return is_exact() ? to_float(ye) : yf; }
  Eigen::MatrixXcd z_float() const;
  SiegelPoint to_float_point() const;
};

struct ComplexStructure {
  int g = 0;
  Mode mode = Mode::Float;
  ExactMatrix je;
  Eigen::MatrixXd jf;

  Eigen::MatrixXd j_float() const { return mode == Mode::Exact ? to_float(je) : jf; }
};

// Membership in the Siegel upper half space: NotSymmetric /
// NotPositiveDefinite. Exact mode checks leading principal minors; float mode
// checks Cholesky success and symmetry within sym_tol.
void validate(const SiegelPoint& z, double sym_tol = 1e-9);

ExactMatrix symplectic_form_exact(int g);
Eigen::MatrixXd symplectic_form_float(int g);

// J with Pi J = i Pi; see the convention note above.
ComplexStructure complex_structure(const SiegelPoint& z);

// Z -> (A Z + B)(C Z + D)^-1 for gamma = [[A,B],[C,D]] integral with
// gamma^t E gamma = E (NotSymplectic otherwise; SingularDenominator is
// reported defensively).
SiegelPoint sp_action(const ExactMatrix& gamma, const SiegelPoint& z);

// tau_M(Z) = M - conj(Z).
SiegelPoint tau(const ExactMatrix& m, const SiegelPoint& z);

// Fixed locus of tau_M is {2 Re Z = M}: exact equality in exact mode, max-norm
// within tol_fix in float mode.
bool in_fixed_locus(const ExactMatrix& m, const SiegelPoint& z, double tol_fix = 1e-9);

// Replaces X by M/2, keeping Y; idempotent, lands in the fixed locus.
SiegelPoint nearest_fixed(const ExactMatrix& m, const SiegelPoint& z);

}  // namespace rav
