#include "rav/subvariety.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace rav {

Eigen::MatrixXcd hodge_embed(const ComplexStructure& j, const Eigen::MatrixXd& v) {
  check(v.rows() == 2 * j.g, "ShapeMismatch", "vectors must have 2g entries");
  Eigen::MatrixXd jv = j.j_float() * v;
  Eigen::MatrixXcd out(v.rows(), v.cols());
  out.real() = 0.5 * v;
  out.imag() = -0.5 * jv;
  return out;
}

RealPlane phi_plane(const SiegelPoint& z, const Eigen::MatrixXcd& w, double tol) {
  validate(z);
  int g = z.g;
  int k = static_cast<int>(w.cols());
  check(w.rows() == 2 * g && k >= 1, "ShapeMismatch", "W must be 2g x k");
  Eigen::MatrixXcd jc =
      complex_structure(z).j_float().cast<std::complex<double>>();
  double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  double off = (jc * w - std::complex<double>(0.0, 1.0) * w).cwiseAbs().maxCoeff();
  check(off <= tol * scale, "WNotHodge", "W is not inside the +i eigenspace");
  Eigen::MatrixXd span(2 * g, 2 * k);
  span.leftCols(k) = w.real();
  span.rightCols(k) = w.imag();
  RealPlane l = RealPlane::from_span(span);
  check(l.r == 2 * k, "RankDeficient", "W basis is degenerate");
  return l;
}

bool is_j_stable(const SiegelPoint& z, const RationalPlane& l) {
  check(z.is_exact(), "ModeMismatch", "exact period point required");
  check(l.n() == 2 * z.g, "ShapeMismatch", "plane must live in rank-2g homology");
  check(l.r() >= 1, "RankDeficient", "empty plane");
  ExactMatrix j = complex_structure(z).je;
  return ExactMatrix::hstack(l.basis(), j * l.basis()).rank() == l.r();
}

ExactMatrix involution_block_m(const ExactMatrix& t) {
  int n = t.rows();
  check(n >= 2 && n % 2 == 0 && t.cols() == n, "NotBlockInvolution", "T must be 2g x 2g");
  check(t.is_integer_matrix(), "NotBlockInvolution", "T must be integral");
  int g = n / 2;
  ExactMatrix m = t.block(0, g, g, g);
  bool shape = t.block(0, 0, g, g) == ExactMatrix::identity(g) &&
               t.block(g, 0, g, g) == ExactMatrix::zeros(g, g) &&
               t.block(g, g, g, g) == -ExactMatrix::identity(g) && m.is_symmetric();
  check(shape, "NotBlockInvolution", "T must be [[I, M],[0, -I]] with M symmetric");
  return m;
}

SubvarietyCertificate is_real_subvariety(const SiegelPoint& z, const ExactMatrix& t,
                                         const RationalPlane& l) {
  check(z.is_exact(), "ModeMismatch", "exact period point required");
  int g = z.g;
  ExactMatrix m = involution_block_m(t);
  check(m.rows() == g, "ShapeMismatch", "T size does not match Z");
  check(in_fixed_locus(m, z), "NotInFixedLocus", "Z is not fixed by the involution of T");
  check(l.n() == 2 * g, "ShapeMismatch", "plane must live in rank-2g homology");
  check(l.r() >= 1 && l.r() % 2 == 0, "BadK", "plane dimension must be even and positive");

  SubvarietyCertificate c;
  c.plane = l;
  c.k = l.r() / 2;
  c.j_stable = is_j_stable(z, l);
  c.j_residual = 0.0;
  const ExactMatrix& b = l.basis();
  c.t_stable = ExactMatrix::hstack(b, t * b).rank() == l.r();
  c.symplectic_rank = (b.transpose() * symplectic_form_exact(g) * b).rank();
  return c;
}

std::vector<ExactMatrix> primitive_vectors(int n, long height) {
  check(n >= 1, "ShapeMismatch", "dimension must be positive");
  check(height >= 1, "BadConfig", "height bound must be >= 1");
  std::vector<ExactMatrix> out;
  std::vector<long> v(static_cast<std::size_t>(n), -height);
  while (true) {
    long lead = 0;
    long gcd = 0;
    for (long x : v) {
      if (lead == 0) lead = x;
      gcd = std::gcd(gcd, std::abs(x));
    }
    if (lead > 0 && gcd == 1) {
      ExactMatrix col(n, 1);
      for (int i = 0; i < n; ++i) col.at(i, 0) = QScalar(v[static_cast<std::size_t>(i)]);
      out.push_back(std::move(col));
    }
    int pos = n - 1;
    while (pos >= 0 && v[static_cast<std::size_t>(pos)] == height) {
      v[static_cast<std::size_t>(pos)] = -height;
      --pos;
    }
    if (pos < 0) break;
    ++v[static_cast<std::size_t>(pos)];
  }
  return out;
}

namespace {

// k-subsets of {0..m-1} in lexicographic order.
void for_each_combination(int m, int k, const std::function<void(const std::vector<int>&)>& f) {
  if (k > m || k <= 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

std::vector<SubvarietyCertificate> brute_search(const SiegelPoint& z, int k, long height,
                                                const std::optional<ExactMatrix>& t) {
  check(z.is_exact(), "ModeMismatch", "exact period point required");
  int g = z.g;
  check(k >= 1 && k <= g - 1, "BadK", "k must be in 1..g-1");
  check(height >= 1, "BadConfig", "height bound must be >= 1");
  if (t) {
    ExactMatrix m = involution_block_m(*t);
    check(m.rows() == g, "ShapeMismatch", "T size does not match Z");
    check(in_fixed_locus(m, z), "NotInFixedLocus", "Z is not fixed by the involution of T");
  }
  ExactMatrix j = complex_structure(z).je;
  ExactMatrix e = symplectic_form_exact(g);

  // building blocks: [v | Jv] for primitive v with rational Jv
  std::vector<ExactMatrix> blocks;
  for (const ExactMatrix& v : primitive_vectors(2 * g, height)) {
    ExactMatrix jv = j * v;
    if (jv.is_rational_matrix()) blocks.push_back(ExactMatrix::hstack(v, jv));
  }

  std::set<RationalPlane> seen;
  std::vector<SubvarietyCertificate> out;
  auto consider = [&](const ExactMatrix& span_cols) {
    if (span_cols.rank() != 2 * k) return;
    RationalPlane p = RationalPlane::from_columns(span_cols);
    if (!seen.insert(p).second) return;
    // inline certification, independent of is_real_subvariety
    const ExactMatrix& b = p.basis();
    SubvarietyCertificate c;
    c.plane = p;
    c.k = k;
    c.j_stable = ExactMatrix::hstack(b, j * b).rank() == 2 * k;
    if (!c.j_stable) return;
    c.symplectic_rank = (b.transpose() * e * b).rank();
    if (c.symplectic_rank != 2 * k) return;
    if (t) {
      c.t_stable = ExactMatrix::hstack(b, *t * b).rank() == 2 * k;
      if (!*c.t_stable) return;
    }
    out.push_back(std::move(c));
  };

  for_each_combination(static_cast<int>(blocks.size()), k, [&](const std::vector<int>& idx) {
    ExactMatrix span(2 * g, 0);
    for (int i : idx) span = ExactMatrix::hstack(span, blocks[static_cast<std::size_t>(i)]);
    consider(span);
  });
  for_each_combination(2 * g, 2 * k, [&](const std::vector<int>& idx) {
    ExactMatrix span(2 * g, 2 * k);
    for (int c = 0; c < 2 * k; ++c) span.at(idx[static_cast<std::size_t>(c)], c) = QScalar(1);
    consider(span);
  });

  std::sort(out.begin(), out.end(),
            [](const SubvarietyCertificate& a, const SubvarietyCertificate& b) {
              return a.plane < b.plane;
            });
  return out;
}

}  // namespace rav
