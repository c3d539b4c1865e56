#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "rav/grassmann.hpp"
#include "rav/plane.hpp"
#include "rav/siegel.hpp"

namespace rav {

// (V - i J V)/2 column-wise: the +i eigencomponent of real homology vectors.
Eigen::MatrixXcd hodge_embed(const ComplexStructure& j, const Eigen::MatrixXd& v);

// The real 2k-plane underlying a k-dimensional subspace W of the +i
// eigenspace of J (given by a 2g x k complex basis): the span of the real and
// imaginary parts of W, automatically J-stable. WNotHodge if W is not inside
// the +i eigenspace within tol; RankDeficient if the basis is degenerate.
RealPlane phi_plane(const SiegelPoint& z, const Eigen::MatrixXcd& w, double tol = 1e-8);

// Exact test J(L) = L on a rational plane. ModeMismatch for float Z.
bool is_j_stable(const SiegelPoint& z, const RationalPlane& l);

// Stability and polarization data of a rational plane. t_stable is empty
// when no involution was supplied to the search producing the certificate.
struct SubvarietyCertificate {
  RationalPlane plane;
  int k = 0;
  bool j_stable = false;
  double j_residual = 0.0;  // 0 when established exactly
  std::optional<bool> t_stable;
  int symplectic_rank = 0;

  // J-stable, not T-unstable, and the restricted symplectic form has full
  // rank 2k: the plane carries a (real, when T was checked) abelian
  // subvariety.
  bool certified() const {
    return j_stable && !(t_stable.has_value() && !*t_stable) && symplectic_rank == 2 * k;
  }
};

// [[I, M],[0, -I]] block shape check; returns M. NotBlockInvolution
// otherwise.
ExactMatrix involution_block_m(const ExactMatrix& t);

// Full certificate of a plane against an exact period point and a lattice
// involution T (block shape above, Z in the fixed locus of its M).
SubvarietyCertificate is_real_subvariety(const SiegelPoint& z, const ExactMatrix& t,
                                         const RationalPlane& l);

// Deterministic enumeration oracle: candidate 2k-planes are spanned by k
// pairs (v, Jv) over primitive integer v with max-norm <= height and
// rational Jv, plus all coordinate-pair planes; returns exactly the planes
// whose inline certification (J-stability, symplectic rank, T-stability when
// t is given) succeeds, sorted and duplicate-free.
std::vector<SubvarietyCertificate> brute_search(const SiegelPoint& z, int k, long height,
                                                const std::optional<ExactMatrix>& t = std::nullopt);

// All primitive integer vectors of dimension n with max-norm <= height and
// positive leading nonzero entry, in lexicographic order.
std::vector<ExactMatrix> primitive_vectors(int n, long height);

}  // namespace rav
