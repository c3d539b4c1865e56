#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "rav/convert.hpp"
#include "rav/realstruct.hpp"
#include "rav/rng.hpp"
#include "rav/subvariety.hpp"

using namespace rav;

namespace {

SiegelPoint z_diag_i_2i() {
  return SiegelPoint::exact(ExactMatrix::zeros(2, 2), ExactMatrix({{1, 0}, {0, 2}}));
}

SiegelPoint z_sqrt2_coupled() {
  ExactMatrix y(2, 2);
  y.at(0, 0) = QScalar::sqrt_of(2);
  y.at(0, 1) = QScalar(1);
  y.at(1, 0) = QScalar(1);
  y.at(1, 1) = QScalar::sqrt_of(2);
  return SiegelPoint::exact(ExactMatrix::zeros(2, 2), y);
}

const ExactMatrix kSplitT({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}});

RationalPlane coord_plane(int i, int j) {
  ExactMatrix b(4, 2);
  b.at(i, 0) = QScalar(1);
  b.at(j, 1) = QScalar(1);
  return RationalPlane::from_columns(b);
}

}  // namespace

TEST_CASE("hodge embedding lands in the +i eigenspace") {
  SiegelPoint z = SiegelPoint::exact(ExactMatrix::zeros(2, 2), ExactMatrix::identity(2));
  ComplexStructure j = complex_structure(z);

  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(4, 1);
  e1(0, 0) = 1;
  Eigen::MatrixXcd w = hodge_embed(j, e1);
  CHECK(w(0, 0) == std::complex<double>(0.5, 0.0));
  CHECK(w(1, 0) == std::complex<double>(0.0, 0.0));
  CHECK(w(2, 0) == std::complex<double>(0.0, -0.5));
  CHECK(w(3, 0) == std::complex<double>(0.0, 0.0));

  // J w = i w for arbitrary real inputs
  Rng rng(51);
  Eigen::MatrixXd v(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int c = 0; c < 3; ++c) v(i, c) = rng.normal();
  Eigen::MatrixXcd wv = hodge_embed(j, v);
  std::complex<double> im(0.0, 1.0);
  CHECK((j.j_float() * wv - im * wv).cwiseAbs().maxCoeff() <= 1e-12);
  // real part recovers half the input
  CHECK(max_abs(2.0 * wv.real() - v) <= 1e-12);

  CHECK_CODE("ShapeMismatch", hodge_embed(j, Eigen::MatrixXd::Zero(3, 1)));
}

TEST_CASE("plane of a Hodge subspace") {
  SiegelPoint z = SiegelPoint::exact(ExactMatrix::zeros(2, 2), ExactMatrix::identity(2));
  ComplexStructure j = complex_structure(z);

  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(4, 1);
  e1(0, 0) = 1;
  RealPlane p = phi_plane(z, hodge_embed(j, e1));
  CHECK(p.r == 2);
  Eigen::MatrixXd b13(4, 2);
  b13.setZero();
  b13(0, 0) = 1;
  b13(2, 1) = 1;
  CHECK(subspace_distance(p, RealPlane::from_span(b13)) <= 1e-12);

  // the plane of a Hodge subspace is J-stable automatically
  Rng rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    int g = 2 + static_cast<int>(rng.uniform_int(0, 1));
    int k = 1 + static_cast<int>(rng.uniform_int(0, g - 1));
    Eigen::MatrixXd x(g, g), a(g, g);
    for (int i = 0; i < g; ++i)
      for (int c = 0; c < g; ++c) {
        double s = rng.normal();
        x(i, c) = s;
        x(c, i) = s;
        a(i, c) = rng.normal();
      }
    Eigen::MatrixXd y = a * a.transpose() + Eigen::MatrixXd::Identity(g, g);
    SiegelPoint zf = SiegelPoint::floating(x, y);
    ComplexStructure jf = complex_structure(zf);
    Eigen::MatrixXd v(2 * g, k);
    for (int i = 0; i < 2 * g; ++i)
      for (int c = 0; c < k; ++c) v(i, c) = rng.normal();
    RealPlane q = phi_plane(zf, hodge_embed(jf, v));
    CHECK(q.r == 2 * k);
    Eigen::MatrixXd pr = q.projector();
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2 * g, 2 * g);
    CHECK(max_abs((id - pr) * jf.j_float() * pr) <= 1e-10);
  }

  // the -i eigenspace is rejected
  Eigen::MatrixXcd bad(4, 1);
  bad.setZero();
  bad(0, 0) = std::complex<double>(1, 0);
  bad(2, 0) = std::complex<double>(0, 1);
  CHECK_CODE("WNotHodge", phi_plane(z, bad));

  // duplicate columns collapse the real span
  Eigen::MatrixXcd dup(4, 2);
  dup.col(0) = hodge_embed(j, e1).col(0);
  dup.col(1) = dup.col(0);
  CHECK_CODE("RankDeficient", phi_plane(z, dup));

  CHECK_CODE("ShapeMismatch", phi_plane(z, Eigen::MatrixXcd::Zero(3, 1)));
}

TEST_CASE("exact J-stability of rational planes") {
  SiegelPoint z = z_diag_i_2i();
  CHECK(is_j_stable(z, coord_plane(0, 2)));
  CHECK(is_j_stable(z, coord_plane(1, 3)));
  CHECK_FALSE(is_j_stable(z, coord_plane(0, 1)));
  CHECK_FALSE(is_j_stable(z, coord_plane(0, 3)));
  CHECK_FALSE(is_j_stable(z, coord_plane(2, 3)));

  // a line is never J-stable: J has no real eigenvectors
  CHECK_FALSE(is_j_stable(z, RationalPlane::from_columns(ExactMatrix({{1}, {0}, {0}, {0}}))));

  // full homology is trivially stable
  CHECK(is_j_stable(z, RationalPlane::from_columns(ExactMatrix::identity(4))));

  CHECK_CODE("ModeMismatch",
             is_j_stable(z.to_float_point(), coord_plane(0, 2)));
  CHECK_CODE("ShapeMismatch",
             is_j_stable(z, RationalPlane::from_columns(ExactMatrix::identity(2))));
}

TEST_CASE("block involution unpacking") {
  ExactMatrix m({{2, 1}, {1, 0}});
  ExactMatrix t = involution_T(m);
  CHECK(involution_block_m(t) == m);
  CHECK(involution_block_m(kSplitT) == ExactMatrix::zeros(2, 2));

  CHECK_CODE("NotBlockInvolution", involution_block_m(ExactMatrix::identity(3)));
  CHECK_CODE("NotBlockInvolution", involution_block_m(symplectic_form_exact(2)));
  // asymmetric upper-right block
  CHECK_CODE("NotBlockInvolution", involution_block_m(ExactMatrix(
                 {{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}})));
  // non-integral entry
  ExactMatrix th = kSplitT;
  th.at(0, 2) = QScalar(mpq_class(1, 2));
  CHECK_CODE("NotBlockInvolution", involution_block_m(th));
}

TEST_CASE("real subvariety certificates") {
  SiegelPoint z = z_diag_i_2i();

  SubvarietyCertificate c = is_real_subvariety(z, kSplitT, coord_plane(0, 2));
  CHECK(c.certified());
  CHECK(c.k == 1);
  CHECK(c.j_stable);
  CHECK(c.j_residual == 0.0);
  REQUIRE(c.t_stable.has_value());
  CHECK(*c.t_stable);
  CHECK(c.symplectic_rank == 2);

  CHECK(is_real_subvariety(z, kSplitT, coord_plane(1, 3)).certified());
  // J moves span(a_1, a_2): not a subvariety
  CHECK_FALSE(is_real_subvariety(z, kSplitT, coord_plane(0, 1)).certified());
  CHECK_FALSE(is_real_subvariety(z, kSplitT, coord_plane(0, 1)).j_stable);
  CHECK_FALSE(is_real_subvariety(z, kSplitT, coord_plane(0, 3)).certified());

  // certificates see the plane, not the basis: rescaled spans agree
  ExactMatrix scaled(4, 2);
  scaled.at(0, 0) = QScalar(3);
  scaled.at(2, 1) = QScalar(-2);
  SubvarietyCertificate cs = is_real_subvariety(z, kSplitT, RationalPlane::from_columns(scaled));
  CHECK(cs.plane == c.plane);
  CHECK(cs.certified() == c.certified());
  CHECK(cs.symplectic_rank == c.symplectic_rank);

  // certification works against a nonzero-M involution at a compatible point
  ExactMatrix m11 = standard_M(1, 1, 2);
  ExactMatrix t11 = involution_T(m11);
  SiegelPoint z11 = SiegelPoint::exact(QScalar(mpq_class(1, 2)) * m11, ExactMatrix({{1, 0}, {0, 2}}));
  SubvarietyCertificate c11 = is_real_subvariety(z11, t11, coord_plane(1, 3));
  CHECK(c11.j_stable);
  CHECK(c11.certified());

  CHECK_CODE("NotInFixedLocus", is_real_subvariety(z, t11, coord_plane(0, 2)));
  CHECK_CODE("BadK", is_real_subvariety(
                 z, kSplitT, RationalPlane::from_columns(ExactMatrix({{1}, {0}, {0}, {0}}))));
  CHECK_CODE("ModeMismatch", is_real_subvariety(z.to_float_point(), kSplitT, coord_plane(0, 2)));
  CHECK_CODE("NotBlockInvolution", is_real_subvariety(z, symplectic_form_exact(2), coord_plane(0, 2)));
}

TEST_CASE("primitive vector enumeration") {
  std::vector<ExactMatrix> v21 = primitive_vectors(2, 1);
  REQUIRE(v21.size() == 4);
  CHECK(v21[0] == ExactMatrix({{0}, {1}}));
  CHECK(v21[1] == ExactMatrix({{1}, {-1}}));
  CHECK(v21[2] == ExactMatrix({{1}, {0}}));
  CHECK(v21[3] == ExactMatrix({{1}, {1}}));

  // height 2 in dimension 2: rescalings of height-1 vectors are excluded
  std::vector<ExactMatrix> v22 = primitive_vectors(2, 2);
  CHECK(v22.size() == 8);

  std::vector<ExactMatrix> v41 = primitive_vectors(4, 1);
  CHECK(v41.size() == 40);  // (3^4 - 1) / 2: sign ambiguity resolved by leading entry
  for (std::size_t i = 0; i < v41.size(); ++i) {
    mpz_class gcd_all = 0;
    int lead = -1;
    for (int r = 0; r < 4; ++r) {
      const mpq_class& e = v41[i].at(r, 0).a();
      CHECK(e.get_den() == 1);
      CHECK(abs(e.get_num()) <= 1);
      mpz_class tmp;
      mpz_gcd(tmp.get_mpz_t(), gcd_all.get_mpz_t(), e.get_num().get_mpz_t());
      gcd_all = tmp;
      if (lead < 0 && e != 0) lead = r;
    }
    CHECK(gcd_all == 1);
    REQUIRE(lead >= 0);
    CHECK(v41[i].at(lead, 0).a() > 0);
    if (i > 0) CHECK(v41[i - 1] != v41[i]);
  }

  CHECK_CODE("BadConfig", primitive_vectors(2, 0));
  CHECK_CODE("ShapeMismatch", primitive_vectors(0, 1));
}

TEST_CASE("exhaustive search over a split product") {
  SiegelPoint z = z_diag_i_2i();
  std::vector<SubvarietyCertificate> found = brute_search(z, 1, 1);
  CHECK(found.size() == 34);

  RationalPlane p13 = coord_plane(0, 2);
  RationalPlane p24 = coord_plane(1, 3);
  bool has13 = false, has24 = false;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const SubvarietyCertificate& c = found[i];
    CHECK(c.k == 1);
    CHECK(c.certified());
    CHECK(!c.t_stable.has_value());
    // independent re-verification through the certificate path
    SubvarietyCertificate rc = is_real_subvariety(z, kSplitT, c.plane);
    CHECK(rc.j_stable);
    CHECK(rc.symplectic_rank == 2);
    if (i > 0) CHECK(found[i - 1].plane < c.plane);  // sorted, duplicate-free
    if (c.plane == p13) has13 = true;
    if (c.plane == p24) has24 = true;
  }
  CHECK(has13);
  CHECK(has24);

  // requiring T-stability filters the same list down
  std::vector<SubvarietyCertificate> real_found = brute_search(z, 1, 1, kSplitT);
  CHECK(real_found.size() <= found.size());
  CHECK(real_found.size() >= 2);
  for (const SubvarietyCertificate& c : real_found) {
    REQUIRE(c.t_stable.has_value());
    CHECK(*c.t_stable);
    CHECK(c.certified());
    SubvarietyCertificate rc = is_real_subvariety(z, kSplitT, c.plane);
    CHECK(rc.certified());
    // and it appears in the unconstrained list
    bool present = false;
    for (const SubvarietyCertificate& u : found) present = present || u.plane == c.plane;
    CHECK(present);
  }
}

TEST_CASE("search finds nothing on an irrationally coupled surface") {
  SiegelPoint z = z_sqrt2_coupled();
  validate(z);
  CHECK(brute_search(z, 1, 1).empty());
  CHECK(brute_search(z, 1, 2).empty());
}

TEST_CASE("search argument validation") {
  SiegelPoint z = z_diag_i_2i();
  CHECK_CODE("BadK", brute_search(z, 0, 1));
  CHECK_CODE("BadK", brute_search(z, 2, 1));
  CHECK_CODE("BadConfig", brute_search(z, 1, 0));
  CHECK_CODE("ModeMismatch", brute_search(z.to_float_point(), 1, 1));
  ExactMatrix t11 = involution_T(standard_M(1, 1, 2));
  CHECK_CODE("NotInFixedLocus", brute_search(z, 1, 1, t11));
}
